"""
Restriction Module: Parameter Restrictions for Symbolic Suffixes

Three ways to restrict the suffixes the learner adds to the classification
tree, each keeping just enough of the suffix to preserve its purpose:

1. restrict_from_counterexample: follow the equality pattern of a
   counterexample suffix
2. restrict_prepend: α(p1)·v̂ for closedness and consistency fixes, keeping
   the branches of T(u·α(d), v̂) that reveal sought registers
3. restrict_separating: α(p1)·v̂ for consistency fixes, keeping one pair of
   jointly satisfiable, differently labelled paths of two trees

Every function returns a SymbolicSuffix whose equality restrictions point at
fresh parameters.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from ralearn.sdt import EQ, NEQ, PARAMETER, REGISTER, TRUE, SDT, SDTGuard, Ref
from ralearn.words import (
    DataSymbol, DataWord, FRESH_PARAM, ParamRestriction, SymbolicSuffix,
    UNRESTRICTED_PARAM, equals_param,
)

#==============================================================================
#                          EXCEPTIONS & HELPERS
#==============================================================================

class RestrictionError(Exception):
    """Exception raised when no restriction can separate the given trees."""
    pass


def _root(restrictions: Sequence[ParamRestriction], j: int) -> int:
    while restrictions[j - 1].target is not None:
        j = restrictions[j - 1].target
    return j


def _shifted(restriction: ParamRestriction, offset: int) -> ParamRestriction:
    """A restriction of v̂ re-indexed for α(p1)·v̂."""
    if restriction.target is None:
        return restriction
    return equals_param(restriction.target + offset)


def _first_restriction(u: DataWord, symbol: DataSymbol) -> List[ParamRestriction]:
    if symbol.action.arity == 0:
        return []
    return [FRESH_PARAM if symbol.value not in u.values else UNRESTRICTED_PARAM]


def _reveals(tree: SDT, targets) -> bool:
    return any(r in targets for guard in tree.guards() for r in guard.registers())


def _else_child(tree: SDT) -> Optional[SDT]:
    if tree.is_leaf:
        return None
    guard, child = tree.children[-1]
    return child if guard.kind in (NEQ, TRUE) else None

#==============================================================================
#                          COUNTEREXAMPLE SUFFIXES
#==============================================================================

def restrict_from_counterexample(u: DataWord, v: DataWord) -> SymbolicSuffix:
    """
    Symbolic suffix of v following the equality pattern of u·v.

    p_i is fresh when its value is new in u·v so far, equal to the earliest
    parameter carrying the same value when that parameter is fresh, and
    unrestricted otherwise.
    """
    seen = list(u.values)
    params: List[int] = []
    restrictions: List[ParamRestriction] = []
    for value in v.values:
        if value not in seen:
            restriction = FRESH_PARAM
        elif value in params and restrictions[params.index(value)].is_fresh:
            restriction = equals_param(params.index(value) + 1)
        else:
            restriction = UNRESTRICTED_PARAM
        restrictions.append(restriction)
        seen.append(value)
        params.append(value)
    return SymbolicSuffix(v.actions, tuple(restrictions))

#==============================================================================
#                          PREPENDED SUFFIXES
#==============================================================================

def restrict_prepend(u: DataWord, symbol: DataSymbol, suffix: SymbolicSuffix, tree: SDT,
                     targets, first_unrestricted: bool = False) -> SymbolicSuffix:
    """
    Restrictions for α(p1)·v̂ where symbol = α(d) and tree = T(u·α(d), v̂).

    The tree is walked along a single branch: a parameter becomes fresh when
    the else branch reveals a target register, equal to an earlier parameter
    when that equality branch does, and the walk stops at the first
    parameter needing neither. Restrictions already on v̂ are kept.
    """
    targets = set(targets)
    restrictions = _first_restriction(u, symbol)
    if first_unrestricted:
        restrictions = [UNRESTRICTED_PARAM for _ in restrictions]
    offset = len(restrictions)
    k = len(u.values)
    current: Optional[SDT] = tree
    for i, own in enumerate(suffix.restrictions, start=1):
        if not own.is_unrestricted:
            restrictions.append(_shifted(own, offset))
            if current is not None and not current.is_leaf and len(current.children) == 1:
                current = current.children[0][1]
            else:
                current = None
            continue
        if current is None or current.is_leaf:
            restrictions.append(UNRESTRICTED_PARAM)
            current = None
            continue
        choice, following = _prepend_choice(current, restrictions, targets, k, offset)
        restrictions.append(choice)
        current = following
    return SymbolicSuffix((symbol.action,) + suffix.actions, tuple(restrictions))


def _param_of(ref: Ref, k: int, offset: int) -> Optional[int]:
    """Parameter of α(p1)·v̂ a tree reference denotes, if any."""
    if ref.kind == PARAMETER:
        return ref.index + offset
    if offset and ref.index == k + 1:
        return 1
    return None


def _prepend_choice(tree: SDT, restrictions: List[ParamRestriction], targets: set,
                    k: int, offset: int) -> Tuple[ParamRestriction, Optional[SDT]]:
    else_child = _else_child(tree)
    if else_child is not None and _reveals(else_child, targets):
        return FRESH_PARAM, else_child
    for guard, child in tree.children:
        if guard.kind != EQ:
            continue
        j = _param_of(guard.ref, k, offset)
        if j is None:
            continue
        root = _root(restrictions, j)
        if restrictions[root - 1].is_fresh and _reveals(child, targets):
            return equals_param(root), child
    return UNRESTRICTED_PARAM, None

#==============================================================================
#                          SEPARATING SUFFIXES
#==============================================================================

Token = tuple


def _token(ref: Ref, k: int, offset: int, side: int, register_map: Optional[Dict[int, int]]) -> Token:
    param = _param_of(ref, k, offset)
    if param is not None:
        return (PARAMETER, param)
    if register_map is not None:
        if side == 0 and ref.index in register_map:
            return (REGISTER, register_map[ref.index])
        if side == 1 and ref.index in register_map.values():
            return (REGISTER, ref.index)
    return (REGISTER, side, ref.index)


def _resolve(token: Token, bound: Dict[Token, Token]) -> Token:
    while token in bound:
        token = bound[token]
    return token


def _jointly_satisfiable(path: Sequence[SDTGuard], other: Sequence[SDTGuard], tokens) -> bool:
    """Check the conjunction of two paths, levels aligned by parameter."""
    bound: Dict[Token, Token] = {}
    for level, (guard, guard2) in enumerate(zip(path, other)):
        param = (PARAMETER, level + 1 + tokens.offset)
        left = [_resolve(tokens.left(r), bound) for r in guard.refs]
        right = [_resolve(tokens.right(r), bound) for r in guard2.refs]
        if guard.kind == EQ and guard2.kind == EQ:
            if left[0] != right[0]:
                return False
            bound[param] = left[0]
        elif guard.kind == EQ:
            if guard2.kind == NEQ and left[0] in right:
                return False
            bound[param] = left[0]
        elif guard2.kind == EQ:
            if guard.kind == NEQ and right[0] in left:
                return False
            bound[param] = right[0]
    return True


class _Tokens:
    def __init__(self, k: int, k2: int, offset: int, register_map: Optional[Dict[int, int]]):
        self.k, self.k2, self.offset, self.register_map = k, k2, offset, register_map

    def left(self, ref: Ref) -> Token:
        return _token(ref, self.k, self.offset, 0, self.register_map)

    def right(self, ref: Ref) -> Token:
        return _token(ref, self.k2, self.offset, 1, self.register_map)


def _candidate(path: Sequence[SDTGuard], other: Sequence[SDTGuard], first: List[ParamRestriction],
               suffix: SymbolicSuffix, tokens: _Tokens) -> Tuple[ParamRestriction, ...]:
    restrictions = list(first)
    for level, (guard, guard2) in enumerate(zip(path, other)):
        own = suffix.restrictions[level]
        if not own.is_unrestricted:
            restrictions.append(_shifted(own, tokens.offset))
        elif guard.kind in (NEQ, TRUE) and guard2.kind in (NEQ, TRUE):
            restrictions.append(FRESH_PARAM)
        elif guard.kind == EQ and tokens.left(guard.ref)[0] == PARAMETER:
            token = tokens.left(guard.ref)
            compatible = (guard2.kind == TRUE
                          or (guard2.kind == EQ and tokens.right(guard2.ref) == token)
                          or (guard2.kind == NEQ and token not in [tokens.right(r) for r in guard2.refs]))
            root = _root(restrictions, token[1])
            if compatible and restrictions[root - 1].is_fresh:
                restrictions.append(equals_param(root))
            else:
                restrictions.append(UNRESTRICTED_PARAM)
        else:
            restrictions.append(UNRESTRICTED_PARAM)
    return tuple(restrictions)


def candidate_restrictions(u: DataWord, symbol: DataSymbol, u2: DataWord, symbol2: DataSymbol,
                           suffix: SymbolicSuffix, tree: SDT, tree2: SDT,
                           register_map: Optional[Dict[int, int]] = None) -> List[SymbolicSuffix]:
    """
    One candidate suffix per separating path pair, in canonical pair order.

    A pair separates when its paths end in different outcomes and their
    guards can hold together. register_map relates registers of u to
    registers of u2; unmapped registers are assumed to hold distinct values.
    """
    if symbol.action != symbol2.action:
        raise RestrictionError("Separating suffixes need extensions by the same action")
    first = _first_restriction(u, symbol)
    if first:
        both_fresh = symbol.value not in u.values and symbol2.value not in u2.values
        first = [FRESH_PARAM if both_fresh else UNRESTRICTED_PARAM]
    tokens = _Tokens(len(u.values), len(u2.values), len(first), register_map)
    candidates = []
    for path, outcome in tree.paths():
        for other, outcome2 in tree2.paths():
            if outcome == outcome2 or not _jointly_satisfiable(path, other, tokens):
                continue
            restrictions = _candidate(path, other, first, suffix, tokens)
            candidates.append(SymbolicSuffix((symbol.action,) + suffix.actions, restrictions))
    return candidates


def restrict_separating(u: DataWord, symbol: DataSymbol, u2: DataWord, symbol2: DataSymbol,
                        suffix: SymbolicSuffix, tree: SDT, tree2: SDT,
                        register_map: Optional[Dict[int, int]] = None) -> SymbolicSuffix:
    """Candidate with the fewest unrestricted parameters; ties go to the earliest pair."""
    candidates = candidate_restrictions(u, symbol, u2, symbol2, suffix, tree, tree2, register_map)
    if not candidates:
        raise RestrictionError(f"No path pair separates {u}·{symbol} from {u2}·{symbol2} on {suffix}")
    return min(candidates, key=lambda c: c.unrestricted_count())
