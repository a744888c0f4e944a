"""
Symbolic Decision Tree Module: Tree Queries and Register Bijections

A tree query runs membership queries for every canonical instantiation of
a symbolic suffix after a prefix and summarizes the answers as a symbolic
decision tree (SDT). Guards test the current suffix parameter against a
register x_j (the j-th data value of the prefix) or an earlier parameter p_j.

Construction conventions:
- a value that occurs among earlier suffix parameters is referenced by the
  earliest such parameter, otherwise by the last prefix position holding it
- an equality branch is merged into the else branch when the else subtree
  classifies all of the branch's instantiations identically
- children are ordered: equality branches by reference (registers before
  parameters, by index), then the else branch
"""

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ralearn.automaton import Guard, TRUE_GUARD, register_name
from ralearn.theory import potential_values
from ralearn.words import Action, DataSymbol, DataWord, SymbolicSuffix, candidate_values

#==============================================================================
#                          CONSTANTS & EXCEPTIONS
#==============================================================================

REGISTER = "x"
PARAMETER = "p"

EQ = "eq"
NEQ = "neq"
TRUE = "true"


class SDTError(Exception):
    """Exception raised for invalid SDT manipulations."""
    pass

#==============================================================================
#                          DATA TYPES
#==============================================================================

@dataclass(frozen=True)
class Ref:
    kind: str
    index: int

    def sort_key(self):
        return (0 if self.kind == REGISTER else 1, self.index)

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


def _sorted_refs(refs) -> Tuple[Ref, ...]:
    return tuple(sorted(set(refs), key=Ref.sort_key))


@dataclass(frozen=True)
class SDTGuard:
    param: int
    kind: str
    refs: Tuple[Ref, ...] = ()

    @property
    def ref(self) -> Ref:
        return self.refs[0]

    def registers(self) -> List[int]:
        return [r.index for r in self.refs if r.kind == REGISTER]

    def holds(self, prefix_values: Sequence[int], params: Sequence[int]) -> bool:
        value = params[self.param - 1]
        if self.kind == TRUE:
            return True
        ref_values = [_lookup(r, prefix_values, params) for r in self.refs]
        if self.kind == EQ:
            return value == ref_values[0]
        return all(value != v for v in ref_values)

    def __str__(self) -> str:
        p = f"p{self.param}"
        if self.kind == TRUE:
            return "true"
        if self.kind == EQ:
            return f"{p}={self.ref}"
        return " ∧ ".join(f"{p}≠{r}" for r in self.refs)


def _lookup(ref: Ref, prefix_values: Sequence[int], params: Sequence[int]) -> int:
    if ref.kind == REGISTER:
        return prefix_values[ref.index - 1]
    return params[ref.index - 1]


@dataclass(frozen=True)
class SDT:
    outcome: Optional[bool] = None
    children: Tuple[Tuple[SDTGuard, "SDT"], ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def evaluate(self, prefix_values: Sequence[int], params: Sequence[int]) -> bool:
        """Function view: follow the first satisfied guard at every level."""
        node = self
        while not node.is_leaf:
            for guard, child in node.children:
                if guard.holds(prefix_values, params):
                    node = child
                    break
            else:
                raise SDTError("No guard matches the given parameter values")
        return node.outcome

    def guards(self) -> Iterator[SDTGuard]:
        for guard, child in self.children:
            yield guard
            yield from child.guards()

    def paths(self) -> List[Tuple[Tuple[SDTGuard, ...], bool]]:
        """All (guard sequence, outcome) pairs in canonical child order."""
        if self.is_leaf:
            return [((), self.outcome)]
        result = []
        for guard, child in self.children:
            for guards, outcome in child.paths():
                result.append(((guard,) + guards, outcome))
        return result

    def __str__(self) -> str:
        return render(self)


def leaf(outcome: bool) -> SDT:
    return SDT(outcome=bool(outcome))


def node(children: Sequence[Tuple[SDTGuard, SDT]]) -> SDT:
    """Build an inner node with children in canonical order."""
    eq_children = sorted((c for c in children if c[0].kind == EQ), key=lambda c: c[0].ref.sort_key())
    others = [c for c in children if c[0].kind != EQ]
    if len(others) > 1:
        raise SDTError("An SDT node has at most one else branch")
    return SDT(children=tuple(eq_children + others))


def render(tree: SDT, indent: int = 0) -> str:
    """Indented text, one guard per line, leaves as + or -."""
    pad = "  " * indent
    if tree.is_leaf:
        return f"{pad}{'+' if tree.outcome else '-'}"
    lines = []
    for guard, child in tree.children:
        if child.is_leaf:
            lines.append(f"{pad}{guard} -> {'+' if child.outcome else '-'}")
        else:
            lines.append(f"{pad}{guard}")
            lines.append(render(child, indent + 1))
    return "\n".join(lines)

#==============================================================================
#                          TREE QUERIES
#==============================================================================

Record = Tuple[Tuple[int, ...], bool]


def tree_query(oracle, u: DataWord, suffix: SymbolicSuffix) -> SDT:
    """Canonical SDT for prefix u and symbolic suffix; uncached."""
    tree, _ = _build(oracle, u, suffix, 0, (), ())
    return tree


def _reference(value: int, prefix_values: Sequence[int], params: Sequence[int]) -> Ref:
    for j, param_value in enumerate(params, start=1):
        if param_value == value:
            return Ref(PARAMETER, j)
    for r in range(len(prefix_values), 0, -1):
        if prefix_values[r - 1] == value:
            return Ref(REGISTER, r)
    raise SDTError(f"Value {value} is not a prefix or parameter value")


def _consistent(tree: SDT, prefix_values: Sequence[int], params: Sequence[int], outcome: bool) -> bool:
    if tree.is_leaf:
        return tree.outcome == outcome
    matched = False
    for guard, child in tree.children:
        if guard.holds(prefix_values, params):
            matched = True
            if not _consistent(child, prefix_values, params, outcome):
                return False
    return matched


def _build(oracle, u: DataWord, suffix: SymbolicSuffix, position: int,
           symbols: Tuple[DataSymbol, ...], params: Tuple[int, ...]) -> Tuple[SDT, List[Record]]:
    if position == len(suffix.actions):
        outcome = oracle.membership(u + DataWord(symbols))
        return leaf(outcome), [(params, outcome)]
    action = suffix.actions[position]
    if action.arity == 0:
        return _build(oracle, u, suffix, position + 1, symbols + (DataSymbol(action),), params)

    i = len(params) + 1
    prefix_values = u.values
    context = list(prefix_values) + list(params)
    restriction = suffix.restrictions[i - 1]

    def branch(value: int) -> Tuple[SDT, List[Record]]:
        return _build(oracle, u, suffix, position + 1,
                      symbols + (DataSymbol(action, value),), params + (value,))

    if not restriction.is_unrestricted:
        value = candidate_values(suffix, i, context, params)[0]
        child, records = branch(value)
        return node([(SDTGuard(i, TRUE), child)]), records

    candidates = potential_values(context)
    explored = [(value, *branch(value)) for value in candidates]
    fresh_child, fresh_records = explored[-1][1], explored[-1][2]
    all_records = list(fresh_records)
    kept = []
    for value, child, records in explored[:-1]:
        all_records.extend(records)
        merged = all(_consistent(fresh_child, prefix_values, p, o) for p, o in records)
        if not merged:
            ref = _reference(value, prefix_values, params)
            kept.append((SDTGuard(i, EQ, (ref,)), child))
    if kept:
        else_guard = SDTGuard(i, NEQ, _sorted_refs(g.ref for g, _ in kept))
    else:
        else_guard = SDTGuard(i, TRUE)
    return node(kept + [(else_guard, fresh_child)]), all_records


class TreeOracle:
    """Cache of tree queries keyed by (prefix, suffix including restrictions)."""

    def __init__(self, oracle):
        self.oracle = oracle
        self._cache: Dict[Tuple[DataWord, SymbolicSuffix], SDT] = {}

    def tree_query(self, u: DataWord, suffix: SymbolicSuffix) -> SDT:
        key = (u, suffix)
        if key not in self._cache:
            before = self.oracle.stats.raw_queries
            self._cache[key] = tree_query(self.oracle, u, suffix)
            stats = self.oracle.stats
            stats.tree_queries += 1
            stats.tree_query_histogram[stats.raw_queries - before] += 1
        return self._cache[key]

    def __len__(self) -> int:
        return len(self._cache)

    def items(self):
        return self._cache.items()

#==============================================================================
#                          MEMORABLE & GUARDS
#==============================================================================

def memorable(tree: SDT, u: Optional[DataWord] = None) -> frozenset:
    """Register indices occurring in any guard of the tree."""
    registers = set()
    for guard in tree.guards():
        registers.update(guard.registers())
    if u is not None and any(r > len(u.values) for r in registers):
        raise SDTError(f"Tree references registers beyond the prefix {u}")
    return frozenset(registers)


def memorable_over(tree_oracle: TreeOracle, u: DataWord, suffixes: Sequence[SymbolicSuffix]) -> frozenset:
    registers = set()
    for suffix in suffixes:
        registers.update(memorable(tree_oracle.tree_query(u, suffix)))
    return frozenset(registers)


def _conjoin(left, right, values: Sequence[int]):
    """Conjoin two (equality register, disequality set) guards; None if unsatisfiable after u."""
    eq1, neq1 = left
    eq2, neq2 = right
    if eq1 is not None and eq2 is not None and values[eq1 - 1] != values[eq2 - 1]:
        return None
    eq = eq1 if eq1 is not None else eq2
    neq = neq1 | neq2
    if eq is not None:
        if any(values[r - 1] == values[eq - 1] for r in neq):
            return None
        return (eq, frozenset())
    return (None, neq)


def initial_guards(tree_oracle: TreeOracle, u: DataWord, suffixes: Sequence[SymbolicSuffix],
                   action: Action) -> List[Guard]:
    """
    Partition of the parameter space at u for transitions labelled action.

    Root-level guards of every tree for a suffix starting with action are
    conjoined; unsatisfiable combinations are dropped and the result is
    checked to be a partition of the candidate values after u.
    """
    if action.arity == 0:
        return [TRUE_GUARD]
    values = u.values
    conjunctions = [(None, frozenset())]
    for suffix in suffixes:
        if not suffix.actions or suffix.actions[0] != action:
            continue
        tree = tree_oracle.tree_query(u, suffix)
        root_guards = []
        for guard, _ in tree.children:
            if guard.kind == EQ:
                root_guards.append((guard.ref.index, frozenset()))
            elif guard.kind == NEQ:
                root_guards.append((None, frozenset(r.index for r in guard.refs)))
            else:
                root_guards.append((None, frozenset()))
        combined = []
        for left in conjunctions:
            for right in root_guards:
                joined = _conjoin(left, right, values)
                if joined is not None and joined not in combined:
                    combined.append(joined)
        conjunctions = combined
    conjunctions.sort(key=lambda g: (g[0] is None, g[0] or 0, sorted(g[1])))
    guards = [Guard.equals(register_name(eq)) if eq is not None
              else Guard.differs([register_name(r) for r in neq])
              for eq, neq in conjunctions]
    _assert_partition(guards, u)
    return guards


def _assert_partition(guards: Sequence[Guard], u: DataWord) -> None:
    valuation = {register_name(i): v for i, v in enumerate(u.values, start=1)}
    for value in potential_values(u):
        matching = sum(1 for g in guards if g.evaluate(valuation, value))
        if matching != 1:
            raise SDTError(f"Initial guards at {u} do not partition the parameter space "
                           f"({matching} guards accept value {value})")

#==============================================================================
#                          EQUIVALENCE & BIJECTIONS
#==============================================================================

def sdt_equivalent(tree: SDT, other: SDT) -> bool:
    return tree == other


def apply_bijection(gamma: Dict[int, int], tree: SDT) -> SDT:
    """Rename register references by gamma and re-canonicalize."""
    if tree.is_leaf:
        return tree
    children = []
    for guard, child in tree.children:
        refs = []
        for ref in guard.refs:
            if ref.kind == REGISTER:
                if ref.index not in gamma:
                    raise SDTError(f"Register x{ref.index} is outside the bijection's domain")
                refs.append(Ref(REGISTER, gamma[ref.index]))
            else:
                refs.append(ref)
        renamed = SDTGuard(guard.param, guard.kind, tuple(refs) if guard.kind == EQ else _sorted_refs(refs))
        children.append((renamed, apply_bijection(gamma, child)))
    return node(children)


def _signature(trees: Sequence[SDT], register: int) -> tuple:
    occurrences = Counter()
    for index, tree in enumerate(trees):
        for guard in tree.guards():
            if register in guard.registers():
                occurrences[(index, guard.param, guard.kind)] += 1
    return tuple(sorted(occurrences.items()))


def bijections(tree_oracle: TreeOracle, u: DataWord, u2: DataWord,
               suffixes: Sequence[SymbolicSuffix]) -> Iterator[Dict[int, int]]:
    """All bijections gamma with gamma(T_u) ≡ T_u2 for every suffix, in lexicographic order."""
    left = [tree_oracle.tree_query(u, s) for s in suffixes]
    right = [tree_oracle.tree_query(u2, s) for s in suffixes]
    domain = sorted(set().union(*(memorable(t) for t in left))) if left else []
    image = sorted(set().union(*(memorable(t) for t in right))) if right else []
    if len(domain) != len(image):
        return
    left_sig = {r: _signature(left, r) for r in domain}
    right_sig = {r: _signature(right, r) for r in image}

    def extend(position: int, gamma: Dict[int, int], used: set) -> Iterator[Dict[int, int]]:
        if position == len(domain):
            if all(apply_bijection(gamma, t) == t2 for t, t2 in zip(left, right)):
                yield dict(gamma)
            return
        register = domain[position]
        for candidate in image:
            if candidate in used or right_sig[candidate] != left_sig[register]:
                continue
            gamma[register] = candidate
            used.add(candidate)
            yield from extend(position + 1, gamma, used)
            used.discard(candidate)
            del gamma[register]

    yield from extend(0, {}, set())


def find_bijection(tree_oracle: TreeOracle, u: DataWord, u2: DataWord,
                   suffixes: Sequence[SymbolicSuffix]) -> Optional[Dict[int, int]]:
    return next(bijections(tree_oracle, u, u2, suffixes), None)


def identity_equivalent(tree_oracle: TreeOracle, u: DataWord, u2: DataWord,
                        suffixes: Sequence[SymbolicSuffix]) -> bool:
    """u ≃_id u2: identical trees for every suffix without renaming."""
    return all(tree_oracle.tree_query(u, s) == tree_oracle.tree_query(u2, s) for s in suffixes)


def is_identity(gamma: Dict[int, int]) -> bool:
    return all(k == v for k, v in gamma.items())


def invert(gamma: Dict[int, int]) -> Dict[int, int]:
    return {v: k for k, v in gamma.items()}


def rename_guard(guard: Guard, gamma: Dict[int, int]) -> Guard:
    """Rename the registers of an automaton guard by a register bijection."""
    mapping = {register_name(k): register_name(v) for k, v in gamma.items()}
    renamed = guard.rename(mapping)
    eq = renamed.equality_register
    if eq is not None:
        return Guard.equals(eq)
    return Guard.differs(renamed.registers())


def all_permutations(registers: Sequence[int]) -> Iterator[Dict[int, int]]:
    for image in itertools.permutations(registers):
        yield dict(zip(registers, image))
