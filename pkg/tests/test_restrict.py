import unittest

from ralearn.restrict import (
    RestrictionError, candidate_restrictions, restrict_from_counterexample,
    restrict_prepend, restrict_separating,
)
from ralearn.sdt import EQ, NEQ, REGISTER, TRUE, Ref, SDTGuard, leaf, node
from ralearn.words import (
    EMPTY_SUFFIX, EMPTY_WORD, FRESH_PARAM, UNRESTRICTED_PARAM, Action, DataWord,
    SymbolicSuffix, equals_param,
)


class TestCounterexampleRestrictions(unittest.TestCase):
    """Restrictions that follow the equality pattern of a counterexample."""

    def setUp(self):
        self.push = Action("push", 1)
        self.pop = Action("pop", 1)
        self.logout = Action("logout", 0)

    def test_fresh_values(self):
        suffix = restrict_from_counterexample(EMPTY_WORD, DataWord.of(self.push(1), self.push(2)))
        self.assertEqual(suffix.restrictions, (FRESH_PARAM, FRESH_PARAM))

    def test_prefix_value_is_unrestricted(self):
        u = DataWord.of(self.push(0))
        suffix = restrict_from_counterexample(u, DataWord.of(self.pop(0)))
        self.assertEqual(suffix.restrictions, (UNRESTRICTED_PARAM,))

    def test_equality_to_earlier_fresh_parameter(self):
        u = DataWord.of(self.push(0))
        v = DataWord.of(self.push(1), self.logout(), self.pop(1))
        suffix = restrict_from_counterexample(u, v)
        self.assertEqual(suffix.restrictions, (FRESH_PARAM, equals_param(1)))
        self.assertEqual(suffix.actions, (self.push, self.logout, self.pop))


class TestSeparatingRestrictions(unittest.TestCase):
    """Restricting alpha(p1)·v̂ to one separating pair of paths."""

    def setUp(self):
        self.alpha = Action("alpha", 1)
        self.suffix = SymbolicSuffix((self.alpha, self.alpha))
        x1, x2 = Ref(REGISTER, 1), Ref(REGISTER, 2)
        # T(alpha(0) alpha(1), alpha(p1) alpha(p2))
        self.tree = node([
            (SDTGuard(1, EQ, (x2,)), node([(SDTGuard(2, EQ, (x1,)), leaf(True)),
                                          (SDTGuard(2, NEQ, (x1,)), leaf(False))])),
            (SDTGuard(1, NEQ, (x2,)), node([(SDTGuard(2, EQ, (x2,)), leaf(True)),
                                           (SDTGuard(2, NEQ, (x2,)), leaf(False))])),
        ])
        # T(alpha(0), alpha(p1) alpha(p2))
        self.tree2 = node([
            (SDTGuard(1, EQ, (x1,)), node([(SDTGuard(2, TRUE), leaf(False))])),
            (SDTGuard(1, NEQ, (x1,)), node([(SDTGuard(2, TRUE), leaf(False))])),
        ])
        self.u = DataWord.of(self.alpha(0))

    def test_candidates_in_pair_order(self):
        """Two pairs separate: the first keeps p2 = p1, the second p3 = p1."""
        candidates = candidate_restrictions(self.u, self.alpha(1), EMPTY_WORD, self.alpha(0),
                                            self.suffix, self.tree, self.tree2, register_map={})
        self.assertEqual([c.restrictions for c in candidates], [
            (FRESH_PARAM, equals_param(1), UNRESTRICTED_PARAM),
            (FRESH_PARAM, FRESH_PARAM, equals_param(1)),
        ])

    def test_fewest_unrestricted_parameters_win(self):
        suffix = restrict_separating(self.u, self.alpha(1), EMPTY_WORD, self.alpha(0),
                                     self.suffix, self.tree, self.tree2, register_map={})
        self.assertEqual(str(suffix), "alpha(p1|fresh) alpha(p2|fresh) alpha(p3|=p1)")
        self.assertEqual(suffix.unrestricted_count(), 0)

    def test_equality_compatible_with_disequality(self):
        """p1 = x2 on one side and p1 ≠ x1 on the other can hold together, so p1 is pinned."""
        x1, x2 = Ref(REGISTER, 1), Ref(REGISTER, 2)
        suffix = SymbolicSuffix((self.alpha,))
        left = node([(SDTGuard(1, EQ, (x2,)), leaf(True)), (SDTGuard(1, NEQ, (x2,)), leaf(False))])
        right = node([(SDTGuard(1, EQ, (x1,)), leaf(True)), (SDTGuard(1, NEQ, (x1,)), leaf(False))])
        u2 = DataWord.of(self.alpha(7))
        candidates = candidate_restrictions(self.u, self.alpha(1), u2, self.alpha(8),
                                            suffix, left, right)
        self.assertEqual([c.restrictions for c in candidates], [
            (FRESH_PARAM, equals_param(1)),
            (FRESH_PARAM, UNRESTRICTED_PARAM),
        ])
        best = restrict_separating(self.u, self.alpha(1), u2, self.alpha(8), suffix, left, right)
        self.assertEqual(best.restrictions, (FRESH_PARAM, equals_param(1)))

    def test_no_separating_pair(self):
        """Trees with identical outcomes everywhere cannot be separated."""
        with self.assertRaises(RestrictionError):
            restrict_separating(self.u, self.alpha(1), EMPTY_WORD, self.alpha(0),
                                self.suffix, self.tree2, self.tree2, register_map={})

    def test_action_mismatch(self):
        beta = Action("beta", 1)
        with self.assertRaises(RestrictionError):
            candidate_restrictions(self.u, self.alpha(1), EMPTY_WORD, beta(0),
                                   self.suffix, self.tree, self.tree2)

    def test_leaf_trees_on_empty_suffix(self):
        """Different outcomes on ε give a single fresh parameter."""
        suffix = restrict_separating(EMPTY_WORD, self.alpha(0), self.u, self.alpha(1),
                                     EMPTY_SUFFIX, leaf(True), leaf(False), register_map={})
        self.assertEqual(suffix.restrictions, (FRESH_PARAM,))


class TestPrependRestrictions(unittest.TestCase):
    """Restricting alpha(p1)·v̂ to the branches that reveal sought registers."""

    def setUp(self):
        self.alpha = Action("alpha", 1)
        self.suffix = SymbolicSuffix((self.alpha, self.alpha))
        x1, x2 = Ref(REGISTER, 1), Ref(REGISTER, 2)
        self.tree = node([
            (SDTGuard(1, EQ, (x2,)), node([(SDTGuard(2, EQ, (x1,)), leaf(True)),
                                          (SDTGuard(2, NEQ, (x1,)), leaf(False))])),
            (SDTGuard(1, NEQ, (x2,)), node([(SDTGuard(2, EQ, (x2,)), leaf(True)),
                                           (SDTGuard(2, NEQ, (x2,)), leaf(False))])),
        ])
        self.u = DataWord.of(self.alpha(0))

    def test_follow_equality_to_revealed_register(self):
        """x1 only shows up under p1 = x2, i.e. the prepended parameter."""
        suffix = restrict_prepend(self.u, self.alpha(1), self.suffix, self.tree, {1})
        self.assertEqual(suffix.restrictions, (FRESH_PARAM, equals_param(1), UNRESTRICTED_PARAM))

    def test_nothing_to_reveal(self):
        suffix = restrict_prepend(self.u, self.alpha(1), self.suffix, self.tree, set())
        self.assertEqual(suffix.restrictions, (FRESH_PARAM, UNRESTRICTED_PARAM, UNRESTRICTED_PARAM))

    def test_known_value_leaves_first_parameter_unrestricted(self):
        suffix = restrict_prepend(self.u, self.alpha(0), self.suffix, self.tree, {1})
        self.assertEqual(suffix.restrictions[0], UNRESTRICTED_PARAM)

    def test_first_unrestricted(self):
        suffix = restrict_prepend(self.u, self.alpha(1), self.suffix, self.tree, {1},
                                  first_unrestricted=True)
        self.assertEqual(suffix.restrictions[0], UNRESTRICTED_PARAM)

    def test_existing_restrictions_are_shifted(self):
        """Restrictions already on v̂ are kept and re-indexed."""
        restricted = SymbolicSuffix((self.alpha, self.alpha), (FRESH_PARAM, equals_param(1)))
        tree = node([(SDTGuard(1, TRUE), node([(SDTGuard(2, TRUE), leaf(True))]))])
        suffix = restrict_prepend(self.u, self.alpha(1), restricted, tree, set())
        self.assertEqual(suffix.restrictions, (FRESH_PARAM, FRESH_PARAM, equals_param(2)))


if __name__ == '__main__':
    unittest.main()
