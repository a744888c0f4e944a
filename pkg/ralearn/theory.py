"""
Theory Module: Natural Numbers with Equality

Data values are non-negative integers and the only relation between them is
equality. Everything the learner needs from the data domain lives here:

1. Indistinguishability: two words with the same actions and the same
   equality pattern behave identically in every data language
2. Fresh values: the smallest natural not used in a context
3. Potential values: the canonical candidates a tree query tries for the
   next parameter

Functions accept either a DataWord (anything with a ``values`` attribute) or
a plain sequence of integers as context.
"""

from typing import Dict, Iterable, List, Sequence, Union, Any

#==============================================================================
#                          CONSTANTS & EXCEPTIONS
#==============================================================================

EQUALITY = "=="
SUPPORTED_RELATIONS = (EQUALITY,)

DataValue = int


class TheoryError(Exception):
    """Exception raised when a relation outside the equality theory is requested."""
    pass

#==============================================================================
#                          HELPERS
#==============================================================================

def _values_of(context: Union[Any, Sequence[int]]) -> List[int]:
    """Return the data values of a DataWord or of a plain value sequence."""
    return list(getattr(context, "values", context))


def check_relation(name: str) -> str:
    """Return the relation name if the theory supports it, raise otherwise."""
    if name not in SUPPORTED_RELATIONS:
        raise TheoryError(f"Relation '{name}' is not supported; only equality is available")
    return name


def check_value(value: Any) -> int:
    """Validate a single data value."""
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise TheoryError(f"Data values must be non-negative integers, got {value!r}")
    return value

#==============================================================================
#                          THEORY OPERATIONS
#==============================================================================

def equality_pattern(values: Sequence[int]) -> List[int]:
    """
    Rename values to first-occurrence indices.

    Two value sequences share an equality pattern iff their renamed forms are
    equal: [5, 7, 5] and [0, 1, 0] both become [0, 1, 0].
    """
    seen: Dict[int, int] = {}
    pattern = []
    for value in values:
        if value not in seen:
            seen[value] = len(seen)
        pattern.append(seen[value])
    return pattern


def indistinguishable(w: Any, w2: Any) -> bool:
    """True iff both words have identical actions and identical equality patterns."""
    if tuple(w.actions) != tuple(w2.actions):
        return False
    return equality_pattern(w.values) == equality_pattern(w2.values)


def fresh_value(context: Union[Any, Sequence[int]]) -> int:
    """Smallest natural number not occurring in the context."""
    used = set(_values_of(context))
    value = 0
    while value in used:
        value += 1
    return value


def potential_values(context: Union[Any, Sequence[int]]) -> List[int]:
    """Distinct values of the context in first-occurrence order, then the fresh value."""
    values = _values_of(context)
    distinct: List[int] = []
    for value in values:
        if value not in distinct:
            distinct.append(value)
    distinct.append(fresh_value(values))
    return distinct


def rename(values: Iterable[int], mapping: Dict[int, int]) -> List[int]:
    """Apply a value renaming; values outside the mapping are kept."""
    return [mapping.get(value, value) for value in values]
