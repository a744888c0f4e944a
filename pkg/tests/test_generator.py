import unittest

from ralearn.generator import GenerationError, generate_ra
from ralearn.oracle import find_nondeterminacy


class TestGenerator(unittest.TestCase):
    """Tests for random register automata."""

    def test_same_seed_same_automaton(self):
        first = generate_ra(locations=6, actions=2, data_fraction=0.5, seed=11)
        second = generate_ra(locations=6, actions=2, data_fraction=0.5, seed=11)
        self.assertEqual(first.to_json(), second.to_json())

    def test_shape(self):
        ra = generate_ra(locations=6, actions=3, data_fraction=0.5, seed=2)
        self.assertEqual(len(ra.locations), 6)
        self.assertEqual([a.name for a in ra.alphabet], ["a0", "a1", "a2"])
        self.assertEqual(ra.initial, "q0")
        self.assertTrue(ra.location("q0").accepting)
        self.assertIsNone(find_nondeterminacy(ra))

    def test_data_fraction(self):
        """Without data locations no registers appear; otherwise at most one per location."""
        plain = generate_ra(locations=5, actions=2, data_fraction=0.0, seed=4)
        self.assertEqual(plain.max_registers, 0)
        data = generate_ra(locations=5, actions=2, data_fraction=1.0, seed=4)
        self.assertEqual(data.max_registers, 1)
        self.assertTrue(any("p==x1" in t.label() for t in data.transitions))

    def test_fraction_counts_transitions(self):
        """Half of the 10 skeleton transitions of a 5x2 automaton become p==x1 / p!=x1 pairs."""
        ra = generate_ra(locations=5, actions=2, data_fraction=0.5, seed=9)
        split = [t for t in ra.transitions if t.guard.equality_register is not None]
        self.assertEqual(len(split), 5)
        self.assertEqual(len(ra.transitions), 15)
        for t in split:
            self.assertEqual(ra.location(t.source).registers, ("x1",))

    def test_invalid_arguments(self):
        with self.assertRaises(GenerationError):
            generate_ra(locations=0)
        with self.assertRaises(GenerationError):
            generate_ra(data_fraction=1.5)


if __name__ == '__main__':
    unittest.main()
