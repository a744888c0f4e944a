"""
Data words, symbolic suffixes and parameter restrictions.

Positions are 1-indexed wherever they are exposed: register ``x_i`` names
the i-th data value of a prefix and parameter ``p_i`` the i-th data-carrying
position of a suffix. Arity-0 actions carry no value and contribute no
parameter.
"""

from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

from ralearn.theory import check_value, fresh_value, potential_values

#==============================================================================
#                          CONSTANTS & EXCEPTIONS
#==============================================================================

UNRESTRICTED = "unrestricted"
FRESH = "fresh"
EQUALS = "equals"


class WordError(Exception):
    """Exception raised for malformed symbols, words or suffixes."""
    pass

#==============================================================================
#                          ACTIONS & SYMBOLS
#==============================================================================

@dataclass(frozen=True, order=True)
class Action:
    name: str
    arity: int = 1

    def __post_init__(self):
        if self.arity not in (0, 1):
            raise WordError(f"Action '{self.name}' has arity {self.arity}; only 0 and 1 are supported")

    def __call__(self, value: Optional[int] = None) -> "DataSymbol":
        return DataSymbol(self, value)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class DataSymbol:
    action: Action
    value: Optional[int] = None

    def __post_init__(self):
        if self.action.arity == 1:
            if self.value is None:
                raise WordError(f"Action '{self.action.name}' needs a data value")
            check_value(self.value)
        elif self.value is not None:
            raise WordError(f"Action '{self.action.name}' takes no data value")

    def __str__(self) -> str:
        if self.action.arity == 0:
            return f"{self.action.name}()"
        return f"{self.action.name}({self.value})"

#==============================================================================
#                          DATA WORDS
#==============================================================================

@dataclass(frozen=True)
class DataWord:
    symbols: Tuple[DataSymbol, ...] = ()

    @classmethod
    def of(cls, *symbols: DataSymbol) -> "DataWord":
        return cls(tuple(symbols))

    @property
    def values(self) -> Tuple[int, ...]:
        return tuple(s.value for s in self.symbols if s.action.arity == 1)

    @property
    def actions(self) -> Tuple[Action, ...]:
        return tuple(s.action for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[DataSymbol]:
        return iter(self.symbols)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return DataWord(self.symbols[index])
        return self.symbols[index]

    def __add__(self, other: "DataWord") -> "DataWord":
        return DataWord(self.symbols + other.symbols)

    def append(self, symbol: DataSymbol) -> "DataWord":
        return DataWord(self.symbols + (symbol,))

    def prefix(self, i: int) -> "DataWord":
        """First i symbols."""
        return DataWord(self.symbols[:i])

    def suffix(self, i: int) -> "DataWord":
        """Symbols after position i (1-indexed), i.e. w_{i+1..|w|}."""
        return DataWord(self.symbols[i:])

    def sort_key(self):
        """Length first, then lexicographic on (action name, value)."""
        return (len(self.symbols),
                tuple((s.action.name, -1 if s.value is None else s.value) for s in self.symbols))

    def __str__(self) -> str:
        if not self.symbols:
            return "ε"
        return " ".join(str(s) for s in self.symbols)


EMPTY_WORD = DataWord()


def sort_words(words) -> List[DataWord]:
    return sorted(words, key=lambda w: w.sort_key())

#==============================================================================
#                          RESTRICTIONS & SYMBOLIC SUFFIXES
#==============================================================================

@dataclass(frozen=True)
class ParamRestriction:
    kind: str = UNRESTRICTED
    target: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (UNRESTRICTED, FRESH, EQUALS):
            raise WordError(f"Unknown restriction kind: {self.kind}")
        if (self.kind == EQUALS) != (self.target is not None):
            raise WordError("Only equality restrictions carry a target parameter")

    @property
    def is_fresh(self) -> bool:
        return self.kind == FRESH

    @property
    def is_unrestricted(self) -> bool:
        return self.kind == UNRESTRICTED

    def __str__(self) -> str:
        if self.kind == FRESH:
            return "fresh"
        if self.kind == EQUALS:
            return f"=p{self.target}"
        return ""


UNRESTRICTED_PARAM = ParamRestriction()
FRESH_PARAM = ParamRestriction(FRESH)


def equals_param(j: int) -> ParamRestriction:
    return ParamRestriction(EQUALS, j)


@dataclass(frozen=True)
class SymbolicSuffix:
    actions: Tuple[Action, ...] = ()
    restrictions: Tuple[ParamRestriction, ...] = field(default=None)

    def __post_init__(self):
        arity_count = sum(a.arity for a in self.actions)
        if self.restrictions is None:
            object.__setattr__(self, "restrictions", (UNRESTRICTED_PARAM,) * arity_count)
        if len(self.restrictions) != arity_count:
            raise WordError(f"Suffix with {arity_count} parameters got {len(self.restrictions)} restrictions")
        for i, restriction in enumerate(self.restrictions, start=1):
            if restriction.kind != EQUALS:
                continue
            j = restriction.target
            if not 1 <= j < i:
                raise WordError(f"p{i} may only equal an earlier parameter, not p{j}")
            if self.restrictions[j - 1].is_unrestricted:
                raise WordError(f"p{i}=p{j} needs p{j} to be fresh")

    @property
    def num_params(self) -> int:
        return len(self.restrictions)

    @property
    def is_restricted(self) -> bool:
        return any(not r.is_unrestricted for r in self.restrictions)

    def unrestricted(self) -> "SymbolicSuffix":
        return SymbolicSuffix(self.actions)

    def unrestricted_count(self) -> int:
        return sum(1 for r in self.restrictions if r.is_unrestricted)

    def root_of(self, i: int) -> int:
        """Follow equality restrictions from p_i down to the parameter that introduced the value."""
        while self.restrictions[i - 1].kind == EQUALS:
            i = self.restrictions[i - 1].target
        return i

    def __len__(self) -> int:
        return len(self.actions)

    def sort_key(self):
        return (len(self.actions), str(self))

    def __str__(self) -> str:
        if not self.actions:
            return "ε"
        parts = []
        index = 0
        for action in self.actions:
            if action.arity == 0:
                parts.append(f"{action.name}()")
                continue
            restriction = self.restrictions[index]
            index += 1
            label = f"p{index}"
            if not restriction.is_unrestricted:
                label += f"|{restriction}"
            parts.append(f"{action.name}({label})")
        return " ".join(parts)


EMPTY_SUFFIX = SymbolicSuffix()

#==============================================================================
#                          SUFFIX OPERATIONS
#==============================================================================

def actions_of(w: DataWord) -> SymbolicSuffix:
    """Unrestricted symbolic suffix with w's action sequence."""
    return SymbolicSuffix(w.actions)


def prepend(action: Action, suffix: SymbolicSuffix) -> SymbolicSuffix:
    """α(p1)·v̂ with all parameters unrestricted."""
    return SymbolicSuffix((action,) + suffix.actions)


def instantiations(suffix: SymbolicSuffix, prefix: DataWord) -> List[DataWord]:
    """
    Enumerate the canonical instantiations of a symbolic suffix after a prefix.

    Parameters are instantiated left to right; an unrestricted parameter takes
    every value in potential_values(prefix + suffix so far), a fresh one only
    the fresh value, and p_i=p_j the value chosen for p_j.
    """
    results: List[DataWord] = []
    _instantiate(suffix, list(prefix.values), 0, [], [], results)
    return results


def _instantiate(suffix: SymbolicSuffix, context: List[int], position: int,
                 symbols: List[DataSymbol], params: List[int], results: List[DataWord]) -> None:
    if position == len(suffix.actions):
        results.append(DataWord(tuple(symbols)))
        return
    action = suffix.actions[position]
    if action.arity == 0:
        _instantiate(suffix, context, position + 1, symbols + [DataSymbol(action)], params, results)
        return
    for value in candidate_values(suffix, len(params) + 1, context, params):
        _instantiate(suffix, context + [value], position + 1,
                     symbols + [DataSymbol(action, value)], params + [value], results)


def candidate_values(suffix: SymbolicSuffix, i: int, context: Sequence[int], params: Sequence[int]) -> List[int]:
    """Values parameter p_i may take given the values seen so far."""
    restriction = suffix.restrictions[i - 1]
    if restriction.kind == FRESH:
        return [fresh_value(context)]
    if restriction.kind == EQUALS:
        return [params[restriction.target - 1]]
    return potential_values(context)
