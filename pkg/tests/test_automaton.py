import json
import unittest

from ralearn.automaton import (
    Guard, Location, ModelFormatError, ModelValidationError, RegisterAutomaton,
    TRUE_GUARD, Transition, UnknownActionError,
)
from ralearn.file_handler import load_model
from ralearn.words import Action, DataWord


class TestRegisterAutomaton(unittest.TestCase):
    """Tests for the register automaton interpreter and model format."""

    def setUp(self):
        self.stack = load_model("stack2")
        self.push = self.stack.action("push")
        self.pop = self.stack.action("pop")

    def test_stack_language(self):
        """The capacity-2 stack accepts exactly the valid operation sequences."""
        accepted = [
            DataWord(),
            DataWord.of(self.push(0), self.pop(0)),
            DataWord.of(self.push(0), self.push(1), self.pop(1), self.pop(0)),
            DataWord.of(self.push(5), self.push(5), self.pop(5)),
        ]
        rejected = [
            DataWord.of(self.pop(0)),
            DataWord.of(self.push(0), self.pop(1)),
            DataWord.of(self.push(0), self.push(1), self.pop(0)),
            DataWord.of(self.push(0), self.push(1), self.push(2)),
        ]
        for w in accepted:
            self.assertTrue(self.stack.accepts(w), f"{w} should be accepted")
        for w in rejected:
            self.assertFalse(self.stack.accepts(w), f"{w} should be rejected")

    def test_step_updates_registers(self):
        state = self.stack.initial_state()
        (state,) = self.stack.step(state, self.push(7))
        (state,) = self.stack.step(state, self.push(9))
        self.assertEqual(state.location, "l2")
        self.assertEqual(state.mu, {"x1": 7, "x2": 9})
        self.assertEqual(self.stack.step(state, self.push(1)), [])

    def test_first_transition(self):
        state = self.stack.step(self.stack.initial_state(), self.push(7))[0]
        transition = self.stack.first_transition(state, self.pop(7))
        self.assertEqual(transition.target, "l0")
        self.assertIsNone(self.stack.first_transition(state, self.pop(8)))

    def test_unknown_action(self):
        """Stepping with an action outside the alphabet raises UnknownActionError."""
        with self.assertRaises(UnknownActionError):
            self.stack.step(self.stack.initial_state(), Action("peek", 1)(0))

    def test_json_reload_preserves_language(self):
        reloaded = RegisterAutomaton.from_json(self.stack.to_json())
        self.assertEqual(reloaded.to_dict(), self.stack.to_dict())

    def test_malformed_json_reports_position(self):
        """Syntax errors carry the line and column."""
        with self.assertRaises(ModelFormatError) as context:
            RegisterAutomaton.from_json('{"alphabet": [\n  oops\n]}')
        self.assertIn("line 2", str(context.exception))

    def test_missing_field(self):
        with self.assertRaises(ModelFormatError):
            RegisterAutomaton.from_json('{"alphabet": []}')

    def test_unsupported_arity_is_a_format_error(self):
        """Arity 2 is reported as a model format problem, not a word error."""
        text = ('{"alphabet": [{"name": "a", "arity": 2}], '
                '"locations": [{"name": "l0", "registers": [], "accepting": true}], '
                '"initial": "l0", "transitions": []}')
        with self.assertRaises(ModelFormatError) as context:
            RegisterAutomaton.from_json(text)
        self.assertIn("arity 2", str(context.exception))

    def test_loading_rejects_nondeterminate_model(self):
        """Two unguarded a-transitions to an accepting and a rejecting location."""
        text = json.dumps({
            "alphabet": [{"name": "a", "arity": 1}],
            "locations": [{"name": "l0", "registers": [], "accepting": False},
                          {"name": "l1", "registers": [], "accepting": True},
                          {"name": "l2", "registers": [], "accepting": False}],
            "initial": "l0",
            "transitions": [{"from": "l0", "action": "a", "guard": [], "assign": {}, "to": "l1"},
                            {"from": "l0", "action": "a", "guard": [], "assign": {}, "to": "l2"}],
        })
        with self.assertRaises(ModelValidationError) as context:
            RegisterAutomaton.from_json(text)
        self.assertIn("a(0)", str(context.exception))

    def test_initial_location_without_registers(self):
        """The initial location must not declare registers."""
        a = Action("a", 1)
        with self.assertRaises(ModelValidationError):
            RegisterAutomaton([a], [Location("l0", ("x1",), True)], "l0", [])

    def test_guard_on_unknown_register(self):
        a = Action("a", 1)
        locations = [Location("l0", (), True), Location("l1", (), True)]
        transitions = [Transition("l0", a, Guard.equals("x1"), (), "l1")]
        with self.assertRaises(ModelValidationError):
            RegisterAutomaton([a], locations, "l0", transitions)

    def test_assignment_must_cover_target_registers(self):
        a = Action("a", 1)
        locations = [Location("l0", (), True), Location("l1", ("x1",), True)]
        transitions = [Transition("l0", a, TRUE_GUARD, (), "l1")]
        with self.assertRaises(ModelValidationError):
            RegisterAutomaton([a], locations, "l0", transitions)

    def test_guard_helpers(self):
        guard = Guard.differs(["x2", "x1"])
        self.assertEqual(guard.registers(), ["x1", "x2"])
        self.assertTrue(guard.evaluate({"x1": 0, "x2": 1}, 2))
        self.assertFalse(guard.evaluate({"x1": 0, "x2": 1}, 1))
        swapped = Guard.equals("x1").rename({"x1": "x2", "x2": "x1"})
        self.assertEqual(swapped.equality_register, "x2")
        self.assertTrue(TRUE_GUARD.is_satisfiable())

    def test_dot_export(self):
        dot = self.stack.to_dot()
        self.assertTrue(dot.startswith("digraph RA {"))
        self.assertIn("doublecircle", dot)
        self.assertIn("pop(p) | p==x1", dot)


if __name__ == '__main__':
    unittest.main()
