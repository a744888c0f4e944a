"""
Learner Module: Register Automaton Learning with a Classification Tree

The learner keeps a classification tree of prefixes, fixes closedness and
consistency violations one at a time, builds a hypothesis once none remain
and processes counterexamples from the equivalence oracle.

1. Closedness: location, transition and register closedness
2. Consistency: location, transition (two variants) and register consistency
3. Hypothesis construction: one location per leaf
4. Counterexample analysis: a right-to-left scan that finds a new short
   prefix, a new prefix for an unseen guard, or failing both, a suffix that
   exposes a wrong register mapping or a coarse guard

Two algorithms share this machinery. ``sllambda`` grows the suffix set by
prepending one action at a time; ``slct`` adds the suffixes of
counterexamples to the tree directly.
"""

import json
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from ralearn.automaton import (
    Guard, Location, PARAM, RegisterAutomaton, TRUE_GUARD, Transition, register_name,
)
from ralearn.classification_tree import CTNode, ClassificationTree, representative_value
from ralearn.file_handler import log_message
from ralearn.oracle import MembershipOracle
from ralearn.restrict import restrict_from_counterexample, restrict_prepend, restrict_separating
from ralearn.sdt import (
    EQ, NEQ, SDTError, TreeOracle, apply_bijection, bijections, find_bijection,
    identity_equivalent, initial_guards, invert, is_identity, memorable, memorable_over,
    rename_guard,
)
from ralearn.words import (
    DataSymbol, DataWord, EMPTY_SUFFIX, EMPTY_WORD, SymbolicSuffix, sort_words,
)

#==============================================================================
#                          CONSTANTS & EXCEPTIONS
#==============================================================================

SL_LAMBDA = "sllambda"
SL_CT = "slct"
ALGORITHMS = (SL_LAMBDA, SL_CT)

DEFAULT_MAX_ROUNDS = 10000

LOCATION_CLOSEDNESS = "location_closedness"
TRANSITION_CLOSEDNESS = "transition_closedness"
REGISTER_CLOSEDNESS = "register_closedness"
LOCATION_CONSISTENCY = "location_consistency"
TRANSITION_CONSISTENCY_A = "transition_consistency_a"
TRANSITION_CONSISTENCY_B = "transition_consistency_b"
REGISTER_CONSISTENCY = "register_consistency"


class LearnerError(Exception):
    """Exception raised when the learner's internal guarantees are violated."""
    pass


@dataclass
class LearnerConfig:
    algorithm: str = SL_LAMBDA
    restrictions: bool = True
    max_rounds: int = DEFAULT_MAX_ROUNDS
    verbose: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise LearnerError(f"Unknown algorithm '{self.algorithm}'; choose from {', '.join(ALGORITHMS)}")
        if self.max_rounds < 1:
            raise LearnerError("max_rounds must be positive")


@dataclass
class Fix:
    check: str
    prefix: DataWord
    suffix: Optional[SymbolicSuffix] = None

    def to_dict(self) -> dict:
        data = {"check": self.check, "prefix": str(self.prefix)}
        if self.suffix is not None:
            data["suffix"] = str(self.suffix)
        return data

#==============================================================================
#                          HELPERS
#==============================================================================

def _valuation(u: DataWord) -> Dict[str, int]:
    return {register_name(i): v for i, v in enumerate(u.values, start=1)}


def _root_guards(tree) -> List[Guard]:
    """Automaton guards for the root level of an SDT."""
    guards = []
    for guard, _ in tree.children:
        if guard.kind == EQ:
            guards.append(Guard.equals(register_name(guard.ref.index)))
        elif guard.kind == NEQ:
            guards.append(Guard.differs([register_name(r.index) for r in guard.refs]))
        else:
            guards.append(TRUE_GUARD)
    return guards

#==============================================================================
#                          LEARNER
#==============================================================================

class Learner:
    """Active learner for register automata over a membership oracle."""

    def __init__(self, oracle: MembershipOracle, config: Optional[LearnerConfig] = None):
        self.oracle = oracle
        self.config = config or LearnerConfig()
        self.tree_oracle = TreeOracle(oracle)
        self.ct = ClassificationTree(self.tree_oracle, oracle.alphabet)
        self.events: List[dict] = []
        self.hypothesis: Optional[RegisterAutomaton] = None
        self.hypotheses = 0
        self.rounds = 0
        self.longest_counterexample = 0
        self.wct_learn = 0.0
        self.wct_test = 0.0
        self._location_leaf: Dict[str, CTNode] = {}
        self._checks: List[Tuple[str, Callable[[], Optional[Fix]]]] = [
            (LOCATION_CLOSEDNESS, self.check_location_closedness),
            (TRANSITION_CLOSEDNESS, self.check_transition_closedness),
            (REGISTER_CLOSEDNESS, self.check_register_closedness),
            (LOCATION_CONSISTENCY, self.check_location_consistency),
            (TRANSITION_CONSISTENCY_A, self.check_transition_consistency_a),
            (TRANSITION_CONSISTENCY_B, self.check_transition_consistency_b),
            (REGISTER_CONSISTENCY, self.check_register_consistency),
        ]

    # ------------------------------------------------------------------ basics

    def emit(self, event: str, **payload) -> None:
        record = {"event": event, **payload}
        self.events.append(record)
        log_message(f"  [{event}] {json.dumps(payload, sort_keys=True)}", self.config.verbose)

    def _restrict(self, restricted: SymbolicSuffix) -> SymbolicSuffix:
        return restricted if self.config.restrictions else restricted.unrestricted()

    def _tq(self, u: DataWord, suffix: SymbolicSuffix):
        return self.tree_oracle.tree_query(u, suffix)

    def _memorable(self, u: DataWord) -> frozenset:
        return memorable_over(self.tree_oracle, u, self.ct.ancestors(u))

    def access_prefix(self, leaf: CTNode) -> DataWord:
        """Short prefix standing for a leaf: its representative if short."""
        if self.ct.is_short(leaf.rep):
            return leaf.rep
        shorts = self.ct.short_prefixes_in(leaf)
        if not shorts:
            raise LearnerError(f"Leaf with representative {leaf.rep} has no short prefix")
        return shorts[0]

    def one_symbol_extensions(self, u: DataWord) -> List[DataWord]:
        k = len(u)
        return sort_words(w for w in self.ct.leaf_of if len(w) == k + 1 and w.prefix(k) == u)

    def guard_for(self, u: DataWord, symbol: DataSymbol) -> Guard:
        """The initial guard at u satisfied by the symbol's data value."""
        valuation = _valuation(u)
        for guard in self.ct.initial_guards(u, symbol.action):
            if guard.evaluate(valuation, symbol.value):
                return guard
        raise LearnerError(f"No initial guard at {u} accepts {symbol}")

    def guard_extension(self, u: DataWord, guard: Guard, symbol: DataSymbol) -> DataWord:
        value = representative_value(u, guard) if symbol.action.arity == 1 else None
        return u.append(DataSymbol(symbol.action, value))

    def refine(self, u: DataWord, suffix: SymbolicSuffix, succeeded: Callable[[], bool]) -> None:
        """Refine the leaf of u; retry unrestricted when a restricted suffix misses its purpose."""
        self.ct.refine(self.ct.leaf_of[u], suffix)
        if suffix.is_restricted and not succeeded():
            self.emit("fallback", prefix=str(u), suffix=str(suffix))
            self.ct.refine(self.ct.leaf_of[u], suffix.unrestricted())

    # --------------------------------------------------------------- closedness

    def check_location_closedness(self) -> Optional[Fix]:
        for leaf in self.ct.leaves():
            if self.ct.short_prefixes_in(leaf):
                continue
            u = sort_words(leaf.prefixes)[0]
            leaf.rep = u
            self.ct.expand(u)
            return Fix(LOCATION_CLOSEDNESS, u)
        return None

    def check_transition_closedness(self) -> Optional[Fix]:
        for u in sort_words(self.ct.short_prefixes):
            for _, _, extension in self.ct.extensions(u):
                if extension not in self.ct.leaf_of:
                    self.ct.sift(extension)
                    return Fix(TRANSITION_CLOSEDNESS, extension)
        return None

    def check_register_closedness(self) -> Optional[Fix]:
        for u in sort_words(self.ct.short_prefixes):
            k = len(u.values)
            known = self._memorable(u)
            for extension in self.one_symbol_extensions(u):
                symbol = extension[-1]
                allowed = known | ({k + 1} if symbol.action.arity == 1 else set())
                missing = self._memorable(extension) - allowed
                if not missing:
                    continue
                witnesses = [v for v in sorted(self.ct.ancestors(extension), key=SymbolicSuffix.sort_key)
                             if memorable(self._tq(extension, v)) & missing]
                v = witnesses[0]
                tree = self._tq(extension, v)
                targets = memorable(tree) & missing
                suffix = self._restrict(restrict_prepend(u, symbol, v, tree, targets))
                self.refine(u, suffix, lambda: targets <= self._memorable(u))
                return Fix(REGISTER_CLOSEDNESS, u, suffix)
        return None

    # -------------------------------------------------------------- consistency

    def check_location_consistency(self) -> Optional[Fix]:
        for leaf in self.ct.leaves():
            shorts = self.ct.short_prefixes_in(leaf)
            if len(shorts) < 2:
                continue
            u = self.access_prefix(leaf)
            for other in shorts:
                if other == u:
                    continue
                gamma = find_bijection(self.tree_oracle, u, other, leaf.ancestors())
                if gamma is None:
                    raise LearnerError(f"Short prefixes {u} and {other} share a leaf without a bijection")
                for _, guard, extension in self.ct.extensions(u):
                    symbol = extension[-1]
                    mapped = self.guard_extension(other, rename_guard(guard, gamma), symbol)
                    if mapped not in self.ct.leaf_of:
                        self.ct.sift(mapped)
                        return Fix(TRANSITION_CLOSEDNESS, mapped)
                    leaf1, leaf2 = self.ct.leaf_of[extension], self.ct.leaf_of[mapped]
                    if leaf1 is leaf2:
                        continue
                    v = self.ct.lca(leaf1, leaf2).suffix
                    suffix = self._restrict(restrict_separating(
                        u, symbol, other, mapped[-1], v,
                        self._tq(extension, v), self._tq(mapped, v), register_map=gamma))
                    self.refine(u, suffix, lambda: self.ct.leaf_of[u] is not self.ct.leaf_of[other])
                    return Fix(LOCATION_CONSISTENCY, u, suffix)
        return None

    def _diverging_extensions(self):
        for u in sort_words(self.ct.short_prefixes):
            for extension in self.one_symbol_extensions(u):
                symbol = extension[-1]
                guard = self.guard_for(u, symbol)
                target = self.guard_extension(u, guard, symbol)
                if target != extension and target in self.ct.leaf_of:
                    yield u, symbol, target, extension

    def _guard_changed(self, u: DataWord, symbol: DataSymbol, target: DataWord) -> Callable[[], bool]:
        return lambda: self.guard_extension(u, self.guard_for(u, symbol), symbol) != target

    def check_transition_consistency_a(self) -> Optional[Fix]:
        for u, symbol, target, extension in self._diverging_extensions():
            leaf1, leaf2 = self.ct.leaf_of[target], self.ct.leaf_of[extension]
            if leaf1 is leaf2:
                continue
            v = self.ct.lca(leaf1, leaf2).suffix
            identity = {i: i for i in range(1, len(u.values) + 1)}
            suffix = self._restrict(restrict_separating(
                u, target[-1], u, symbol, v, self._tq(target, v), self._tq(extension, v),
                register_map=identity))
            self.refine(u, suffix, self._guard_changed(u, symbol, target))
            return Fix(TRANSITION_CONSISTENCY_A, extension, suffix)
        return None

    def check_transition_consistency_b(self) -> Optional[Fix]:
        for u, symbol, target, extension in self._diverging_extensions():
            leaf = self.ct.leaf_of[extension]
            if self.ct.leaf_of[target] is not leaf:
                continue
            ancestors = leaf.ancestors()
            if identity_equivalent(self.tree_oracle, target, extension, ancestors):
                continue
            v = next(s for s in sorted(ancestors, key=SymbolicSuffix.sort_key)
                     if self._tq(target, s) != self._tq(extension, s))
            tree = self._tq(extension, v)
            k = len(u.values)
            targets = (memorable(tree) | memorable(self._tq(target, v))) - {k + 1}
            suffix = self._restrict(restrict_prepend(u, symbol, v, tree, targets, first_unrestricted=True))
            self.refine(u, suffix, self._guard_changed(u, symbol, target))
            return Fix(TRANSITION_CONSISTENCY_B, extension, suffix)
        return None

    def check_register_consistency(self) -> Optional[Fix]:
        for u in sort_words(self.ct.short_prefixes):
            ancestors = self.ct.ancestors(u)
            symmetries = [g for g in bijections(self.tree_oracle, u, u, ancestors) if not is_identity(g)]
            if not symmetries:
                continue
            known = self._memorable(u)
            for extension in self.one_symbol_extensions(u):
                fix = self._break_symmetry(u, known, extension, symmetries)
                if fix is not None:
                    return fix
        return None

    def _extends(self, gamma: Dict[int, int], prefix: DataWord, suffixes, shared) -> bool:
        return any(all(candidate.get(r) == gamma[r] for r in shared)
                   for candidate in bijections(self.tree_oracle, prefix, prefix, suffixes))

    def _break_symmetry(self, u: DataWord, known: frozenset, extension: DataWord,
                        symmetries: List[Dict[int, int]]) -> Optional[Fix]:
        ancestors = self.ct.ancestors(extension)
        shared = known & self._memorable(extension)
        for gamma in symmetries:
            if self._extends(gamma, extension, ancestors, shared):
                continue
            ordered = sorted(ancestors, key=SymbolicSuffix.sort_key)
            breaking = [v for v in ordered
                        if not self._extends(gamma, extension, [v], known & memorable(self._tq(extension, v)))]
            revealing = [v for v in ordered if memorable(self._tq(extension, v)) & known]
            candidates = breaking or revealing
            if not candidates:
                continue
            v = candidates[0]
            tree = self._tq(extension, v)
            targets = memorable(tree) & known
            suffix = self._restrict(restrict_prepend(u, extension[-1], v, tree, targets))

            def broken() -> bool:
                return gamma not in list(bijections(self.tree_oracle, u, u, self.ct.ancestors(u)))

            self.refine(u, suffix, broken)
            return Fix(REGISTER_CONSISTENCY, u, suffix)
        return None

    # ------------------------------------------------------------------- driver

    def initialize(self) -> None:
        if EMPTY_WORD not in self.ct.leaf_of:
            self.ct.sift(EMPTY_WORD)

    def close(self) -> None:
        """Apply fixes, restarting from the first check after each, until none applies."""
        self.initialize()
        while True:
            fix = None
            for _, check in self._checks:
                fix = check()
                if fix is not None:
                    break
            if fix is None:
                return
            self.rounds += 1
            self.emit("fix", **fix.to_dict())
            if self.rounds > self.config.max_rounds:
                raise LearnerError(f"Iteration cap of {self.config.max_rounds} rounds exceeded")

    # --------------------------------------------------------------- hypothesis

    def build_hypothesis(self) -> RegisterAutomaton:
        """
        One location per leaf, registers from the memorable parameters of the
        leaf's access prefix and transitions for every initial guard; register
        assignments follow the bijection from an extension to the access
        prefix of its leaf.
        """
        leaves = self.ct.leaves()
        access = {id(leaf): self.access_prefix(leaf) for leaf in leaves}
        initial = self.ct.leaf_of[EMPTY_WORD]
        ordered = [initial] + sorted((l for l in leaves if l is not initial),
                                     key=lambda l: access[id(l)].sort_key())
        names = {id(leaf): f"l{i}" for i, leaf in enumerate(ordered)}
        self._location_leaf = {names[id(leaf)]: leaf for leaf in ordered}

        locations, transitions = [], []
        for leaf in ordered:
            u = access[id(leaf)]
            registers = tuple(register_name(i) for i in sorted(self._memorable(u)))
            accepting = self._tq(u, EMPTY_SUFFIX).outcome
            locations.append(Location(names[id(leaf)], registers, bool(accepting)))
            for action, guard, extension in self.ct.extensions(u):
                if extension not in self.ct.leaf_of:
                    raise LearnerError(f"Extension {extension} is missing; the tree is not closed")
                target_leaf = self.ct.leaf_of[extension]
                target = access[id(target_leaf)]
                gamma = find_bijection(self.tree_oracle, extension, target, target_leaf.ancestors())
                if gamma is None:
                    raise LearnerError(f"No bijection from {extension} to {target}")
                assignment = self._assignment(u, extension, gamma, set(registers))
                transitions.append(Transition(names[id(leaf)], action, guard, assignment,
                                              names[id(target_leaf)]))
        return RegisterAutomaton(self.oracle.alphabet, locations, names[id(initial)], transitions)

    def _assignment(self, u: DataWord, extension: DataWord, gamma: Dict[int, int],
                    registers: set) -> Tuple[Tuple[str, str], ...]:
        k = len(u.values)
        pairs = []
        for target_register, position in sorted(invert(gamma).items()):
            if position == k + 1 and len(extension.values) == k + 1:
                source = PARAM
            else:
                source = register_name(position)
                if source not in registers:
                    raise LearnerError(f"Register {source} of {u} is not memorable; the tree is not register closed")
            pairs.append((register_name(target_register), source))
        return tuple(pairs)

    # ----------------------------------------------------------- counterexamples

    def _trace(self, w: DataWord):
        """Location and state of the hypothesis after w, following first enabled transitions."""
        hyp = self.hypothesis
        state = hyp.initial_state()
        for symbol in w:
            successors = hyp.step(state, symbol)
            if not successors:
                raise LearnerError(f"The hypothesis has no run on {w}")
            state = successors[0]
        return self._location_leaf[state.location], state

    def _transition_prefixes(self, w: DataWord, i: int) -> List[Tuple[DataWord, Guard, DataWord]]:
        """(u, guard, u·α(repr(u, guard))) for every short prefix u reached by w_{1:i-1}."""
        leaf, state = self._trace(w.prefix(i - 1))
        symbol = w[i - 1]
        transition = self.hypothesis.first_transition(state, symbol)
        access = self.access_prefix(leaf)
        result = []
        for u in [access] + [s for s in self.ct.short_prefixes_in(leaf) if s != access]:
            guard = transition.guard
            if u != access:
                gamma = find_bijection(self.tree_oracle, access, u, leaf.ancestors())
                if gamma is None:
                    continue
                guard = rename_guard(guard, gamma)
            result.append((u, guard, self.guard_extension(u, guard, symbol)))
        return result

    def _progress(self) -> Tuple[int, int, int]:
        return len(self.ct.short_prefixes), len(self.ct.leaf_of), len(self.ct.suffixes())

    def analyze_counterexample(self, w: DataWord) -> Fix:
        """
        Right-to-left scan for a new short prefix (case 1) or an unseen guard
        (case 2). When neither shows up, a second scan adds the suffix that
        exposes a coarse guard or a wrong register mapping of the hypothesis.
        Every fix adds a short prefix, a prefix or a suffix.
        """
        if self.hypothesis is None:
            raise LearnerError("Counterexample analysis needs a hypothesis")
        if self.hypothesis.accepts(w) == self.oracle.membership(w):
            raise LearnerError(f"{w} is not a counterexample for the current hypothesis")
        before = self._progress()
        fix = self._analyze(w)
        after = self._progress()
        if not any(a > b for a, b in zip(after, before)):
            raise LearnerError(f"Counterexample {w} produced no new short prefix, prefix or suffix")
        self.emit("fix", **fix.to_dict())
        return fix

    def _analyze(self, w: DataWord) -> Fix:
        for i in range(len(w), 0, -1):
            tail = self._restrict(restrict_from_counterexample(w.prefix(i), w.suffix(i)))
            with_action = self._restrict(restrict_from_counterexample(w.prefix(i - 1), w.suffix(i - 1)))
            for u, guard, extension in self._transition_prefixes(w, i):
                if extension not in self.ct.leaf_of:
                    self.ct.sift(extension)
                    return Fix("new_prefix", extension)
                fix = self._new_short_prefix(extension, tail) or self._new_guard(u, w[i - 1], with_action)
                if fix is not None:
                    return fix
        return self._refine_from_counterexample(w)

    def _refine_from_counterexample(self, w: DataWord) -> Fix:
        """Add the suffix of w on which the hypothesis' mapping or guard at some index is wrong."""
        for i in range(len(w), 0, -1):
            tail = self._restrict(restrict_from_counterexample(w.prefix(i), w.suffix(i)))
            with_action = self._restrict(restrict_from_counterexample(w.prefix(i - 1), w.suffix(i - 1)))
            u, _, extension = self._transition_prefixes(w, i)[0]
            if extension not in self.ct.leaf_of:
                self.ct.sift(extension)
                return Fix("new_prefix", extension)
            target_leaf = self.ct.leaf_of[extension]
            if tail not in target_leaf.ancestors() and not self._mapping_holds(extension, target_leaf, tail):
                self.ct.refine(target_leaf, tail)
                return Fix("new_suffix", extension, tail)
            action = w[i - 1].action
            ancestors = self.ct.ancestors(u)
            if action.arity == 1 and with_action not in ancestors:
                finer = initial_guards(self.tree_oracle, u, ancestors + [with_action], action)
                if len(finer) > len(self.ct.initial_guards(u, action)):
                    self.ct.refine(self.ct.leaf_of[u], with_action)
                    return Fix("new_suffix", u, with_action)
        raise LearnerError(f"Counterexample {w} could not be analyzed at any index")

    def _mapping_holds(self, extension: DataWord, leaf: CTNode, suffix: SymbolicSuffix) -> bool:
        """Whether the register mapping the hypothesis uses for extension also fits suffix."""
        target = self.access_prefix(leaf)
        gamma = find_bijection(self.tree_oracle, extension, target, leaf.ancestors())
        if gamma is None:
            return False
        try:
            return apply_bijection(gamma, self._tq(extension, suffix)) == self._tq(target, suffix)
        except SDTError:
            return False

    def _new_short_prefix(self, extension: DataWord, tail: SymbolicSuffix) -> Optional[Fix]:
        leaf = self.ct.leaf_of[extension]
        suffixes = leaf.ancestors() + [tail]
        if any(find_bijection(self.tree_oracle, extension, s, suffixes) is not None
               for s in self.ct.short_prefixes_in(leaf)):
            return None
        if self.config.algorithm == SL_CT:
            self.ct.refine(leaf, tail)
            return Fix("new_suffix", extension, tail)
        if self.ct.is_short(extension):
            return None
        self.ct.expand(extension)
        return Fix("new_short_prefix", extension, tail)

    def _new_guard(self, u: DataWord, symbol: DataSymbol, with_action: SymbolicSuffix) -> Optional[Fix]:
        if symbol.action.arity == 0:
            return None
        for guard in _root_guards(self._tq(u, with_action)):
            extension = self.guard_extension(u, guard, symbol)
            if extension in self.ct.leaf_of:
                continue
            if self.config.algorithm == SL_CT:
                count = len(self.ct.initial_guards(u, symbol.action))
                self.ct.sift(extension)
                self.refine(u, with_action, lambda: len(self.ct.initial_guards(u, symbol.action)) > count)
                return Fix("new_suffix", u, with_action)
            self.ct.sift(extension)
            return Fix("new_guard", extension, with_action)
        return None

    # -------------------------------------------------------------- main loop

    def _submit(self, hyp: RegisterAutomaton, equivalence_oracle) -> Optional[DataWord]:
        self.hypotheses += 1
        self.emit("hypothesis", number=self.hypotheses, locations=len(hyp.locations),
                  transitions=len(hyp.transitions), resets=self.oracle.stats.membership_queries)
        start = time.perf_counter()
        w = equivalence_oracle.find_counterexample(hyp)
        self.wct_test += time.perf_counter() - start
        if w is not None:
            self.longest_counterexample = max(self.longest_counterexample, len(w))
            self.emit("counterexample", number=self.hypotheses, word=str(w), length=len(w))
        return w

    def learn(self, equivalence_oracle) -> RegisterAutomaton:
        """Learn until the equivalence oracle finds no counterexample."""
        start = time.perf_counter()
        test_before = self.wct_test
        self.close()
        self.hypothesis = self.build_hypothesis()
        w = self._submit(self.hypothesis, equivalence_oracle)
        while w is not None:
            while self.hypothesis.accepts(w) != self.oracle.membership(w):
                self.analyze_counterexample(w)
                self.close()
                self.hypothesis = self.build_hypothesis()
            w = self._submit(self.hypothesis, equivalence_oracle)
        self.wct_learn += time.perf_counter() - start - (self.wct_test - test_before)
        self.emit("done", hypotheses=self.hypotheses, locations=len(self.hypothesis.locations))
        return self.hypothesis

    # ---------------------------------------------------------------- reporting

    def replay_check(self, hyp: Optional[RegisterAutomaton] = None) -> List[DataWord]:
        """Memoized membership answers the hypothesis contradicts."""
        hyp = hyp or self.hypothesis
        return sort_words(w for w, answer in self.oracle.answers().items() if hyp.accepts(w) != answer)

    def stats(self) -> dict:
        hyp = self.hypothesis
        data = self.oracle.stats.to_dict()
        data.update({
            "algorithm": self.config.algorithm,
            "restrictions": self.config.restrictions,
            "t": len(hyp.locations) if hyp else 0,
            "n": len(hyp.transitions) if hyp else 0,
            "r": hyp.max_registers if hyp else 0,
            "m": self.longest_counterexample,
            "short_prefixes": len(self.ct.short_prefixes),
            "prefixes": len(self.ct.leaf_of),
            "hypotheses": self.hypotheses,
            "rounds": self.rounds,
            "wct_learn_ms": round(self.wct_learn * 1000, 3),
            "wct_test_ms": round(self.wct_test * 1000, 3),
        })
        return data

    def events_jsonl(self) -> str:
        return "".join(json.dumps(e, sort_keys=True) + "\n" for e in self.events)


def learn(oracle: MembershipOracle, equivalence_oracle,
          config: Optional[LearnerConfig] = None) -> Tuple[RegisterAutomaton, dict]:
    learner = Learner(oracle, config)
    hyp = learner.learn(equivalence_oracle)
    return hyp, learner.stats()
