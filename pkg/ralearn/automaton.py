"""
Register Automaton Module: Representation, Interpreter and Model Format

A register automaton has locations with their own register sets, guarded
transitions over one formal parameter ``p``, parallel register assignments
and an accepting/rejecting label per location. Runs that find no enabled
transition fall into an implicit rejecting sink that is never written to
model files.

The same type is used for simulated systems under learning (loaded from
JSON model files) and for learned hypotheses.

Model format (JSON):
    {
      "alphabet":    [{"name": "push", "arity": 1}, ...],
      "locations":   [{"name": "l0", "registers": [], "accepting": true}, ...],
      "initial":     "l0",
      "transitions": [{"from": "l0", "action": "push",
                       "guard": [{"lhs": "p", "op": "==", "rhs": "x1"}],
                       "assign": {"x1": "p"}, "to": "l1"}, ...]
    }
"""

import itertools
import json
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ralearn.words import Action, DataSymbol, DataWord, WordError

#==============================================================================
#                          CONSTANTS & EXCEPTIONS
#==============================================================================

PARAM = "p"
EQ = "=="
NEQ = "!="
REGISTER_PATTERN = re.compile(r"^x([1-9][0-9]*)$")


class ModelFormatError(Exception):
    """Exception raised when model text cannot be parsed."""
    pass


class ModelValidationError(Exception):
    """Exception raised when a model violates a register-automaton invariant."""
    pass


class UnknownActionError(Exception):
    """Exception raised when a symbol's action is not in the alphabet."""
    pass


def register_index(name: str) -> int:
    match = REGISTER_PATTERN.match(name)
    if match is None:
        raise ModelValidationError(f"Invalid register name: {name!r}")
    return int(match.group(1))


def register_name(index: int) -> str:
    return f"x{index}"


def sort_registers(names) -> List[str]:
    return sorted(names, key=register_index)

#==============================================================================
#                          GUARDS & ASSIGNMENTS
#==============================================================================

@dataclass(frozen=True)
class GuardLiteral:
    lhs: str
    op: str
    rhs: str

    def __post_init__(self):
        if self.op not in (EQ, NEQ):
            raise ModelValidationError(f"Unknown guard operator: {self.op!r}")
        if PARAM not in (self.lhs, self.rhs):
            raise ModelValidationError(f"Guard literal '{self}' must mention the parameter p")

    @property
    def register(self) -> Optional[str]:
        other = self.rhs if self.lhs == PARAM else self.lhs
        return None if other == PARAM else other

    def holds(self, valuation: Dict[str, int], d: Optional[int]) -> bool:
        left = d if self.lhs == PARAM else valuation[self.lhs]
        right = d if self.rhs == PARAM else valuation[self.rhs]
        return (left == right) if self.op == EQ else (left != right)

    def __str__(self) -> str:
        return f"{self.lhs}{self.op}{self.rhs}"


@dataclass(frozen=True)
class Guard:
    literals: Tuple[GuardLiteral, ...] = ()

    @classmethod
    def equals(cls, register: str) -> "Guard":
        return cls((GuardLiteral(PARAM, EQ, register),))

    @classmethod
    def differs(cls, registers: Sequence[str]) -> "Guard":
        return cls(tuple(GuardLiteral(PARAM, NEQ, r) for r in sort_registers(set(registers))))

    @property
    def is_true(self) -> bool:
        return not self.literals

    @property
    def equality_register(self) -> Optional[str]:
        """The register x with a literal p==x, if any."""
        for literal in self.literals:
            if literal.op == EQ and literal.register is not None:
                return literal.register
        return None

    def registers(self) -> List[str]:
        return sort_registers({l.register for l in self.literals if l.register is not None})

    def evaluate(self, valuation: Dict[str, int], d: Optional[int]) -> bool:
        return all(literal.holds(valuation, d) for literal in self.literals)

    def rename(self, mapping: Dict[str, str]) -> "Guard":
        renamed = []
        for literal in self.literals:
            lhs = mapping.get(literal.lhs, literal.lhs)
            rhs = mapping.get(literal.rhs, literal.rhs)
            renamed.append(GuardLiteral(lhs, literal.op, rhs))
        return Guard(tuple(renamed))

    def is_satisfiable(self) -> bool:
        """Small-model check over a domain of |registers|+1 values."""
        registers = self.registers()
        domain = range(len(registers) + 1)
        for values in itertools.product(domain, repeat=len(registers) + 1):
            valuation = dict(zip(registers, values[1:]))
            if self.evaluate(valuation, values[0]):
                return True
        return False

    def __str__(self) -> str:
        if self.is_true:
            return "true"
        return " && ".join(str(l) for l in self.literals)


TRUE_GUARD = Guard()


@dataclass(frozen=True)
class Transition:
    source: str
    action: Action
    guard: Guard
    assignment: Tuple[Tuple[str, str], ...]
    target: str

    @property
    def assign(self) -> Dict[str, str]:
        return dict(self.assignment)

    def label(self) -> str:
        param = "(p)" if self.action.arity == 1 else "()"
        assigns = ", ".join(f"{x}:={src}" for x, src in self.assignment) or "-"
        return f"{self.action.name}{param} | {self.guard} | {assigns}"


@dataclass(frozen=True)
class Location:
    name: str
    registers: Tuple[str, ...] = ()
    accepting: bool = False


@dataclass(frozen=True)
class RAState:
    location: str
    valuation: Tuple[Tuple[str, int], ...] = ()

    @property
    def mu(self) -> Dict[str, int]:
        return dict(self.valuation)

    def __str__(self) -> str:
        mu = ", ".join(f"{x}↦{v}" for x, v in self.valuation)
        return f"({self.location}, {{{mu}}})"

#==============================================================================
#                          REGISTER AUTOMATON
#==============================================================================

class RegisterAutomaton:
    """Immutable register automaton with an implicit rejecting sink."""

    def __init__(self, alphabet: Sequence[Action], locations: Sequence[Location],
                 initial: str, transitions: Sequence[Transition]):
        self.alphabet: Tuple[Action, ...] = tuple(alphabet)
        self.locations: Tuple[Location, ...] = tuple(locations)
        self.initial = initial
        self.transitions: Tuple[Transition, ...] = tuple(transitions)
        self._locations = {loc.name: loc for loc in self.locations}
        self._actions = {a.name: a for a in self.alphabet}
        self._outgoing: Dict[Tuple[str, str], List[Transition]] = {}
        for t in self.transitions:
            self._outgoing.setdefault((t.source, t.action.name), []).append(t)
        self.validate()

    # ------------------------------------------------------------------ access

    def location(self, name: str) -> Location:
        return self._locations[name]

    def action(self, name: str) -> Action:
        if name not in self._actions:
            raise UnknownActionError(f"Action '{name}' is not in the alphabet")
        return self._actions[name]

    def transitions_from(self, location: str, action: Action) -> List[Transition]:
        return self._outgoing.get((location, action.name), [])

    def initial_state(self) -> RAState:
        return RAState(self.initial)

    def is_accepting(self, state: RAState) -> bool:
        return self._locations[state.location].accepting

    @property
    def max_registers(self) -> int:
        return max((len(loc.registers) for loc in self.locations), default=0)

    # ---------------------------------------------------------------- validity

    def validate(self) -> None:
        names = [a.name for a in self.alphabet]
        if len(set(names)) != len(names):
            raise ModelValidationError("Action names must be unique")
        location_names = [loc.name for loc in self.locations]
        if len(set(location_names)) != len(location_names):
            raise ModelValidationError("Location names must be unique")
        for loc in self.locations:
            for register in loc.registers:
                register_index(register)
        if self.initial not in self._locations:
            raise ModelValidationError(f"Initial location '{self.initial}' is not declared")
        if self._locations[self.initial].registers:
            raise ModelValidationError("The initial location must not have registers")
        for t in self.transitions:
            self._validate_transition(t)

    def check_determinacy(self) -> None:
        """Raise ModelValidationError with a witness if some word has an accepting and a rejecting run."""
        from ralearn.oracle import find_nondeterminacy
        witness = find_nondeterminacy(self)
        if witness is not None:
            raise ModelValidationError(f"Model is not determinate: {witness} has an accepting and a rejecting run")

    def _validate_transition(self, t: Transition) -> None:
        where = f"transition {t.source} --{t.action.name}[{t.guard}]--> {t.target}"
        if t.source not in self._locations or t.target not in self._locations:
            raise ModelValidationError(f"{where}: unknown location")
        if self._actions.get(t.action.name) != t.action:
            raise ModelValidationError(f"{where}: action not in the alphabet")
        source_registers = set(self._locations[t.source].registers)
        for literal in t.guard.literals:
            for operand in (literal.lhs, literal.rhs):
                if operand == PARAM:
                    if t.action.arity == 0:
                        raise ModelValidationError(f"{where}: arity-0 action cannot test p")
                elif operand not in source_registers:
                    raise ModelValidationError(f"{where}: guard uses unknown register {operand}")
        if not t.guard.is_satisfiable():
            raise ModelValidationError(f"{where}: guard is unsatisfiable")
        target_registers = set(self._locations[t.target].registers)
        assign = t.assign
        if set(assign) != target_registers:
            raise ModelValidationError(
                f"{where}: assignment must cover exactly {sort_registers(target_registers)}")
        for register, source in assign.items():
            if source == PARAM:
                if t.action.arity == 0:
                    raise ModelValidationError(f"{where}: arity-0 action cannot store p")
            elif source not in source_registers:
                raise ModelValidationError(f"{where}: assignment reads unknown register {source}")

    # ----------------------------------------------------------------- semantics

    def step(self, state: RAState, symbol: DataSymbol) -> List[RAState]:
        """All successor states; an empty list means the run fell into the sink."""
        action = self.action(symbol.action.name)
        mu = state.mu
        successors: List[RAState] = []
        for t in self.transitions_from(state.location, action):
            if not t.guard.evaluate(mu, symbol.value):
                continue
            valuation = tuple(
                (x, symbol.value if src == PARAM else mu[src])
                for x, src in sorted(t.assignment, key=lambda pair: register_index(pair[0])))
            successor = RAState(t.target, valuation)
            if successor not in successors:
                successors.append(successor)
        return successors

    def run_states(self, w: DataWord) -> List[RAState]:
        states = [self.initial_state()]
        for symbol in w:
            next_states: List[RAState] = []
            for state in states:
                for successor in self.step(state, symbol):
                    if successor not in next_states:
                        next_states.append(successor)
            states = next_states
            if not states:
                break
        return states

    def accepts(self, w: DataWord) -> bool:
        return any(self.is_accepting(s) for s in self.run_states(w))

    def first_transition(self, state: RAState, symbol: DataSymbol) -> Optional[Transition]:
        """First enabled transition in declaration order."""
        mu = state.mu
        for t in self.transitions_from(state.location, self.action(symbol.action.name)):
            if t.guard.evaluate(mu, symbol.value):
                return t
        return None

    # ------------------------------------------------------------ serialization

    def to_dict(self) -> dict:
        return {
            "alphabet": [{"name": a.name, "arity": a.arity} for a in self.alphabet],
            "locations": [{"name": loc.name, "registers": list(loc.registers), "accepting": loc.accepting}
                          for loc in self.locations],
            "initial": self.initial,
            "transitions": [{
                "from": t.source,
                "action": t.action.name,
                "guard": [{"lhs": l.lhs, "op": l.op, "rhs": l.rhs} for l in t.guard.literals],
                "assign": dict(t.assignment),
                "to": t.target,
            } for t in self.transitions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "RegisterAutomaton":
        try:
            alphabet = [Action(a["name"], int(a.get("arity", 1))) for a in data["alphabet"]]
            actions = {a.name: a for a in alphabet}
            locations = [Location(loc["name"], tuple(loc.get("registers", [])), bool(loc.get("accepting", False)))
                         for loc in data["locations"]]
            transitions = []
            for entry in data["transitions"]:
                if entry["action"] not in actions:
                    raise ModelValidationError(
                        f"transition {entry['from']} --{entry['action']}--> {entry['to']}: unknown action")
                guard = Guard(tuple(GuardLiteral(l["lhs"], l["op"], l["rhs"]) for l in entry.get("guard", [])))
                assignment = tuple((x, src) for x, src in entry.get("assign", {}).items())
                transitions.append(Transition(entry["from"], actions[entry["action"]], guard,
                                              assignment, entry["to"]))
            ra = cls(alphabet, locations, data["initial"], transitions)
        except KeyError as e:
            raise ModelFormatError(f"Missing field {e} in model") from e
        except WordError as e:
            raise ModelFormatError(str(e)) from e
        except (TypeError, ValueError) as e:
            raise ModelFormatError(f"Malformed model: {e}") from e
        ra.check_determinacy()
        return ra

    @classmethod
    def from_json(cls, text: str) -> "RegisterAutomaton":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ModelFormatError(f"line {e.lineno} column {e.colno}: {e.msg}") from e
        if not isinstance(data, dict):
            raise ModelFormatError("line 1 column 1: model must be a JSON object")
        return cls.from_dict(data)

    def to_dot(self) -> str:
        lines = ["digraph RA {", "  rankdir=LR;", '  __start [shape=point, label=""];',
                 f'  __start -> "{self.initial}";']
        for loc in self.locations:
            shape = "doublecircle" if loc.accepting else "circle"
            registers = ", ".join(loc.registers)
            label = f"{loc.name}\\n{{{registers}}}" if registers else loc.name
            lines.append(f'  "{loc.name}" [shape={shape}, label="{label}"];')
        for t in self.transitions:
            lines.append(f'  "{t.source}" -> "{t.target}" [label="{t.label()}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return (f"RegisterAutomaton(locations={len(self.locations)}, "
                f"transitions={len(self.transitions)}, registers={self.max_registers})")

#==============================================================================
#                          MODULE-LEVEL OPERATIONS
#==============================================================================

def step(ra: RegisterAutomaton, state: RAState, symbol: DataSymbol) -> List[RAState]:
    return ra.step(state, symbol)


def accepts(ra: RegisterAutomaton, w: DataWord) -> bool:
    return ra.accepts(w)


def load(text: str) -> RegisterAutomaton:
    return RegisterAutomaton.from_json(text)


def save(ra: RegisterAutomaton) -> str:
    return ra.to_json()


def export_dot(ra: RegisterAutomaton) -> str:
    return ra.to_dot()


