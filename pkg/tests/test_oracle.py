import unittest

from ralearn.automaton import Location, RegisterAutomaton, TRUE_GUARD, Transition
from ralearn.file_handler import load_model
from ralearn.oracle import (
    ExactEquivalenceOracle, MembershipOracle, OracleError, RandomWalkEquivalenceOracle,
    canonical_words, find_counterexample_exact, find_nondeterminacy,
)
from ralearn.words import Action, DataWord


def accept_everything(alphabet):
    """One accepting location with a self-loop per action."""
    transitions = [Transition("l0", a, TRUE_GUARD, (), "l0") for a in alphabet]
    return RegisterAutomaton(alphabet, [Location("l0", (), True)], "l0", transitions)


class TestMembershipOracle(unittest.TestCase):
    """Tests for query counting and memoization."""

    def setUp(self):
        self.sul = load_model("stack2")
        self.push = self.sul.action("push")
        self.pop = self.sul.action("pop")

    def test_repeated_queries_are_memoized(self):
        """Only distinct words count as membership queries."""
        oracle = MembershipOracle(self.sul)
        w = DataWord.of(self.push(0), self.pop(0))
        self.assertTrue(oracle.membership(w))
        self.assertTrue(oracle.membership(w))
        self.assertFalse(oracle.membership(DataWord.of(self.pop(0))))
        self.assertEqual(oracle.stats.membership_queries, 2)
        self.assertEqual(oracle.stats.raw_queries, 3)
        self.assertEqual(oracle.stats.learn_queries, 2)
        self.assertEqual(oracle.cached(w), True)
        self.assertEqual(len(oracle.answers()), 2)

    def test_testing_phase_counts_separately(self):
        oracle = MembershipOracle(self.sul)
        with oracle.testing():
            oracle.membership(DataWord.of(self.push(0)))
        oracle.membership(DataWord.of(self.push(1)))
        self.assertEqual(oracle.stats.test_queries, 1)
        self.assertEqual(oracle.stats.learn_queries, 1)

    def test_stats_dictionary(self):
        data = MembershipOracle(self.sul).stats.to_dict()
        for key in ("membership_queries", "learn_queries", "test_queries",
                    "equivalence_queries", "counterexamples", "tree_queries"):
            self.assertEqual(data[key], 0)


class TestEquivalenceOracles(unittest.TestCase):
    """Tests for exact and random-walk equivalence checking."""

    def setUp(self):
        self.sul = load_model("stack2")
        self.push = self.sul.action("push")
        self.pop = self.sul.action("pop")

    def test_exact_oracle_finds_shortest_counterexample(self):
        """Against an accept-all hypothesis the shortest difference is pop(0)."""
        hyp = accept_everything(self.sul.alphabet)
        w = find_counterexample_exact(hyp, self.sul)
        self.assertEqual(w, DataWord.of(self.pop(0)))

    def test_exact_oracle_prefers_fresh_values(self):
        """A stack that never overflows differs from stack2 first on push(0) push(1) push(2)."""
        overflow = Transition("l2", self.push, TRUE_GUARD, (("x1", "x1"), ("x2", "x2")), "l2")
        hyp = RegisterAutomaton(self.sul.alphabet, self.sul.locations, self.sul.initial,
                                list(self.sul.transitions) + [overflow])
        w = find_counterexample_exact(hyp, self.sul)
        print(f"Counterexample: {w}")
        self.assertEqual(w, DataWord.of(self.push(0), self.push(1), self.push(2)))

    def test_exact_oracle_on_equal_models(self):
        self.assertIsNone(find_counterexample_exact(self.sul, load_model("stack2")))

    def test_exact_oracle_counts_queries(self):
        oracle = MembershipOracle(self.sul)
        eq = ExactEquivalenceOracle(oracle)
        self.assertIsNotNone(eq.find_counterexample(accept_everything(self.sul.alphabet)))
        self.assertEqual(oracle.stats.equivalence_queries, 1)
        self.assertEqual(oracle.stats.counterexamples, 1)
        self.assertEqual(oracle.stats.membership_queries, 0)

    def test_alphabet_mismatch(self):
        other = accept_everything([Action("enq", 1)])
        with self.assertRaises(OracleError):
            find_counterexample_exact(other, self.sul)

    def test_random_oracle_is_seeded(self):
        """Two oracles with the same seed return the same counterexample."""
        hyp = accept_everything(self.sul.alphabet)
        first = RandomWalkEquivalenceOracle(MembershipOracle(self.sul), 6, 500, seed=3)
        second = RandomWalkEquivalenceOracle(MembershipOracle(self.sul), 6, 500, seed=3)
        w = first.find_counterexample(hyp)
        self.assertIsNotNone(w)
        self.assertEqual(w, second.find_counterexample(hyp))
        self.assertNotEqual(hyp.accepts(w), self.sul.accepts(w))
        self.assertGreater(first.oracle.stats.test_queries, 0)

    def test_random_oracle_without_difference(self):
        oracle = MembershipOracle(self.sul)
        eq = RandomWalkEquivalenceOracle(oracle, 4, 50, seed=1)
        self.assertIsNone(eq.find_counterexample(load_model("stack2")))


class TestExploration(unittest.TestCase):
    """Tests for determinacy checking and canonical enumeration."""

    def test_shipped_models_are_determinate(self):
        for name in ("stack2", "stack3", "fifo3", "login", "symmetry"):
            self.assertIsNone(find_nondeterminacy(load_model(name)), f"{name} is not determinate")

    def test_nondeterminacy_witness(self):
        a = Action("a", 1)
        locations = [Location("l0", (), False), Location("l1", (), True), Location("l2", (), False)]
        transitions = [Transition("l0", a, TRUE_GUARD, (), "l1"),
                       Transition("l0", a, TRUE_GUARD, (), "l2")]
        ra = RegisterAutomaton([a], locations, "l0", transitions)
        self.assertEqual(find_nondeterminacy(ra), DataWord.of(a(0)))

    def test_canonical_words(self):
        """One unary action, length up to 2: ε, a(0), a(0)a(0), a(0)a(1)."""
        a = Action("a", 1)
        words = canonical_words([a], 2)
        self.assertEqual(len(words), 4)
        self.assertEqual(words[-1], DataWord.of(a(0), a(1)))


if __name__ == '__main__':
    unittest.main()
