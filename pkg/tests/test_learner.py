import time
import unittest

import numpy as np

from ralearn.file_handler import available_models, load_model
from ralearn.generator import generate_ra
from ralearn.learner import (
    REGISTER_CONSISTENCY, SL_CT, SL_LAMBDA, Learner, LearnerConfig, LearnerError, learn,
)
from ralearn.oracle import ExactEquivalenceOracle, MembershipOracle, find_counterexample_exact
from ralearn.words import EMPTY_WORD, FRESH_PARAM, UNRESTRICTED_PARAM, DataWord, SymbolicSuffix


class ScriptedEquivalenceOracle:
    """Returns the listed words while they are counterexamples, then defers to the exact oracle."""

    def __init__(self, oracle, words):
        self.oracle = oracle
        self.words = list(words)
        self.exact = ExactEquivalenceOracle(oracle)

    def find_counterexample(self, hyp):
        while self.words:
            w = self.words.pop(0)
            if hyp.accepts(w) != self.oracle.sul.accepts(w):
                self.oracle.stats.equivalence_queries += 1
                self.oracle.stats.counterexamples += 1
                return w
        return self.exact.find_counterexample(hyp)


def learn_exact(name, algorithm=SL_LAMBDA, restrictions=True):
    sul = load_model(name)
    oracle = MembershipOracle(sul)
    learner = Learner(oracle, LearnerConfig(algorithm=algorithm, restrictions=restrictions))
    hyp = learner.learn(ExactEquivalenceOracle(oracle))
    return sul, hyp, learner


def hypothesis_sizes(learner):
    return [e["locations"] for e in learner.events if e["event"] == "hypothesis"]


class TestLearnerConfig(unittest.TestCase):

    def test_unknown_algorithm(self):
        with self.assertRaises(LearnerError):
            LearnerConfig(algorithm="lstar")

    def test_non_positive_round_cap(self):
        with self.assertRaises(LearnerError):
            LearnerConfig(max_rounds=0)


class TestStackTrace(unittest.TestCase):
    """Learning runs on the capacity-2 stack."""

    def setUp(self):
        self.sul = load_model("stack2")
        push, pop = self.sul.action("push"), self.sul.action("pop")
        self.counterexamples = [
            DataWord.of(push(0), push(1), push(2)),
            DataWord.of(push(0), pop(0)),
        ]

    def test_exact_oracle_trace(self):
        """Shortest counterexamples are push(0) pop(0), then push(0) push(1) push(2)."""
        _, hyp, learner = learn_exact("stack2")
        words = [e["word"] for e in learner.events if e["event"] == "counterexample"]
        print(f"Hypothesis sizes: {hypothesis_sizes(learner)}, counterexamples: {words}")
        self.assertEqual(words, ["push(0) pop(0)", "push(0) push(1) push(2)"])
        self.assertEqual(hypothesis_sizes(learner), [2, 3, 4])
        self.assertIsNone(find_counterexample_exact(hyp, self.sul))

    def test_long_counterexample_first(self):
        """Starting with push(0) push(1) push(2) gives hypotheses of 2, 4, 4 and 4 locations."""
        oracle = MembershipOracle(self.sul)
        learner = Learner(oracle, LearnerConfig())
        hyp = learner.learn(ScriptedEquivalenceOracle(oracle, self.counterexamples))
        print(f"Hypothesis sizes: {hypothesis_sizes(learner)}")
        self.assertEqual(hypothesis_sizes(learner), [2, 4, 4, 4])
        self.assertIsNone(find_counterexample_exact(hyp, self.sul))
        self.assertEqual(learner.events[-1]["event"], "done")

    def test_first_counterexample_adds_short_prefix(self):
        oracle = MembershipOracle(self.sul)
        learner = Learner(oracle, LearnerConfig())
        learner.learn(ScriptedEquivalenceOracle(oracle, self.counterexamples))
        fixes = [e for e in learner.events if e["event"] == "fix"]
        self.assertEqual(fixes[0]["check"], "location_closedness")
        self.assertIn("new_short_prefix", [f["check"] for f in fixes])
        self.assertIn("push(0)", learner.ct.dump())


class TestRegisterConsistency(unittest.TestCase):
    """Symmetric registers with an asymmetric continuation are separated."""

    def test_symmetry_is_broken(self):
        sul = load_model("symmetry")
        alpha = sul.action("alpha")
        oracle = MembershipOracle(sul)
        learner = Learner(oracle, LearnerConfig())
        w = DataWord.of(alpha(0), alpha(1), alpha(0))
        hyp = learner.learn(ScriptedEquivalenceOracle(oracle, [w]))
        checks = [e.get("check") for e in learner.events if e["event"] == "fix"]
        print(f"Fixes: {checks}")
        self.assertIn(REGISTER_CONSISTENCY, checks)
        self.assertIsNone(find_counterexample_exact(hyp, sul))

    def test_check_on_symmetric_leaf(self):
        """
        With alpha(p1) and beta(p1) in the tree, alpha(0) alpha(1) is symmetric
        in x1 and x2, but its beta-extension remembers only x2.
        """
        sul = load_model("symmetry")
        alpha, beta = sul.action("alpha"), sul.action("beta")
        oracle = MembershipOracle(sul)
        learner = Learner(oracle, LearnerConfig())
        ct = learner.ct
        learner.initialize()
        ct.expand(EMPTY_WORD)
        ct.refine(ct.leaf_of[EMPTY_WORD], SymbolicSuffix((beta,)))
        ct.expand(DataWord.of(alpha(0)))
        ct.refine(ct.leaf_of[EMPTY_WORD], SymbolicSuffix((alpha,)))
        u = DataWord.of(alpha(0), alpha(1))
        ct.expand(u)

        fix = learner.check_register_consistency()
        print(f"Fix: {fix}")
        self.assertIsNotNone(fix)
        self.assertEqual(fix.check, REGISTER_CONSISTENCY)
        self.assertEqual(fix.prefix, u)
        self.assertEqual(fix.suffix.actions, (beta, beta))
        self.assertEqual(fix.suffix.restrictions, (FRESH_PARAM, UNRESTRICTED_PARAM))
        self.assertIsNone(learner.check_register_consistency())

        hyp = learner.learn(ExactEquivalenceOracle(oracle))
        self.assertIsNone(find_counterexample_exact(hyp, sul))

    def test_natural_run(self):
        """With shortest counterexamples, register closedness separates x1 and x2 first."""
        sul, hyp, learner = learn_exact("symmetry")
        checks = [e.get("check") for e in learner.events if e["event"] == "fix"]
        print(f"Fixes: {checks}")
        self.assertIn("register_closedness", checks)
        self.assertIsNone(find_counterexample_exact(hyp, sul))


class TestLearnedModels(unittest.TestCase):
    """Every shipped model is learned exactly by both algorithms."""

    MODELS = ("stack2", "stack3", "fifo3", "fifo5", "login", "symmetry")

    def test_sllambda(self):
        for name in self.MODELS:
            sul, hyp, learner = learn_exact(name)
            self.assertIsNone(find_counterexample_exact(hyp, sul), name)
            self.assertEqual(learner.replay_check(), [], name)
            print(f"{name}: {learner.stats()['learn_queries']} learn queries, {len(hyp.locations)} locations")

    def test_slct(self):
        for name in self.MODELS:
            sul, hyp, learner = learn_exact(name, algorithm=SL_CT)
            self.assertIsNone(find_counterexample_exact(hyp, sul), name)

    def test_without_restrictions(self):
        for name in ("stack2", "fifo3", "login"):
            sul, hyp, _ = learn_exact(name, restrictions=False)
            self.assertIsNone(find_counterexample_exact(hyp, sul), name)

    def test_generated_models(self):
        """Random determinate automata are learned exactly."""
        for seed in range(20):
            sul = generate_ra(locations=5, actions=2, data_fraction=0.5, seed=seed)
            oracle = MembershipOracle(sul)
            hyp, stats = learn(oracle, ExactEquivalenceOracle(oracle), LearnerConfig())
            self.assertIsNone(find_counterexample_exact(hyp, sul), f"seed {seed}")
            self.assertLessEqual(stats["t"], len(sul.locations) + 1, f"seed {seed}")

    def test_larger_generated_models(self):
        """Eight locations, half of the transitions comparing data, with and without restrictions."""
        for seed in (1, 2, 3, 12, 16):
            sul = generate_ra(locations=8, actions=2, data_fraction=0.5, seed=seed)
            for restrictions in (True, False):
                for algorithm in (SL_LAMBDA, SL_CT):
                    oracle = MembershipOracle(sul)
                    config = LearnerConfig(algorithm=algorithm, restrictions=restrictions)
                    hyp, _ = learn(oracle, ExactEquivalenceOracle(oracle), config)
                    self.assertIsNone(find_counterexample_exact(hyp, sul),
                                      f"seed {seed}, {algorithm}, restrictions={restrictions}")

    def test_every_shipped_model_within_a_minute(self):
        start = time.perf_counter()
        for name in available_models():
            sul, hyp, _ = learn_exact(name)
            self.assertIsNone(find_counterexample_exact(hyp, sul), name)
        elapsed = time.perf_counter() - start
        print(f"Learned {len(available_models())} models in {elapsed:.1f} s")
        self.assertLess(elapsed, 60.0)

    def test_hypotheses_are_determinate(self):
        """The first enabled transition decides every run on random words."""
        rng = np.random.default_rng(5)
        for name in ("stack3", "fifo3", "symmetry"):
            sul, hyp, _ = learn_exact(name)
            for _ in range(10000 // 3):
                length = int(rng.integers(0, 7))
                symbols = []
                for _ in range(length):
                    action = hyp.alphabet[int(rng.integers(len(hyp.alphabet)))]
                    symbols.append(action(int(rng.integers(4))) if action.arity else action())
                w = DataWord(tuple(symbols))
                state = hyp.initial_state()
                for symbol in w:
                    successors = hyp.step(state, symbol)
                    self.assertLessEqual(len(successors), 1, f"{name}: {w}")
                    if not successors:
                        break
                    state = successors[0]
                self.assertEqual(hyp.accepts(w), sul.accepts(w), f"{name}: {w}")


class TestQueryCounts(unittest.TestCase):
    """Restrictions and the algorithm choice reduce membership queries."""

    def test_restrictions_save_queries(self):
        on = off = 0
        for name in ("stack2", "stack3", "fifo3"):
            on += learn_exact(name)[2].stats()["learn_queries"]
            off += learn_exact(name, restrictions=False)[2].stats()["learn_queries"]
        print(f"Learn queries with restrictions: {on}, without: {off}")
        self.assertGreaterEqual(off, 1.5 * on)

    def test_sllambda_not_worse_than_slct(self):
        for name in ("stack2", "fifo3", "fifo5"):
            sllambda = learn_exact(name)[2].stats()["learn_queries"]
            slct = learn_exact(name, algorithm=SL_CT)[2].stats()["learn_queries"]
            print(f"{name}: sllambda {sllambda}, slct {slct}")
            self.assertLessEqual(sllambda, slct, name)


class TestStatistics(unittest.TestCase):

    def test_stats_fields(self):
        _, hyp, learner = learn_exact("login")
        stats = learner.stats()
        for key in ("membership_queries", "learn_queries", "test_queries", "equivalence_queries",
                    "counterexamples", "tree_queries", "t", "n", "r", "m", "short_prefixes",
                    "prefixes", "hypotheses", "rounds", "wct_learn_ms", "wct_test_ms"):
            self.assertIn(key, stats)
        self.assertEqual(stats["t"], len(hyp.locations))
        self.assertEqual(stats["algorithm"], SL_LAMBDA)
        self.assertEqual(stats["equivalence_queries"], stats["hypotheses"])
        self.assertEqual(stats["counterexamples"], stats["hypotheses"] - 1)
        self.assertGreater(stats["tree_queries"], 0)

    def test_events_are_json_lines(self):
        _, _, learner = learn_exact("stack2")
        lines = learner.events_jsonl().splitlines()
        self.assertEqual(len(lines), len(learner.events))
        self.assertTrue(all(line.startswith("{") for line in lines))

    def test_counterexample_analysis_needs_a_counterexample(self):
        sul, hyp, learner = learn_exact("stack2")
        push, pop = sul.action("push"), sul.action("pop")
        with self.assertRaises(LearnerError):
            learner.analyze_counterexample(DataWord.of(push(0), pop(0)))


if __name__ == '__main__':
    unittest.main()
