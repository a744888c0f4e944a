"""
Oracle Module: Membership and Equivalence Queries

1. MembershipOracle: answers membership queries on a simulated system under
   learning, memoizes answers and keeps QueryStats (distinct and raw query
   counts, split into learn and test phases)
2. RandomWalkEquivalenceOracle: seeded random testing, the black-box setup
3. ExactEquivalenceOracle: breadth-first exploration of the synchronized
   product over canonical data values; returns a shortest counterexample

The exploration used by the exact oracle also backs find_nondeterminacy,
which searches a single automaton for a word with both an accepting and a
rejecting run.
"""

from collections import Counter, deque
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ralearn.automaton import RAState, RegisterAutomaton
from ralearn.theory import fresh_value, potential_values
from ralearn.words import Action, DataSymbol, DataWord, EMPTY_WORD

#==============================================================================
#                          CONSTANTS & EXCEPTIONS
#==============================================================================

LEARN_PHASE = "learn"
TEST_PHASE = "test"

DEFAULT_MAX_DEPTH = 10
DEFAULT_WALKS = 10000
DEFAULT_REUSE_PROBABILITY = 0.5


class OracleError(Exception):
    """Exception raised for equivalence-oracle precondition violations."""
    pass

#==============================================================================
#                          MEMBERSHIP ORACLE
#==============================================================================

@dataclass
class QueryStats:
    membership_queries: int = 0
    raw_queries: int = 0
    learn_queries: int = 0
    test_queries: int = 0
    equivalence_queries: int = 0
    counterexamples: int = 0
    tree_queries: int = 0
    tree_query_histogram: Counter = field(default_factory=Counter)

    def to_dict(self) -> dict:
        return {
            "membership_queries": self.membership_queries,
            "raw_queries": self.raw_queries,
            "learn_queries": self.learn_queries,
            "test_queries": self.test_queries,
            "equivalence_queries": self.equivalence_queries,
            "counterexamples": self.counterexamples,
            "tree_queries": self.tree_queries,
            "tree_query_histogram": {str(k): v for k, v in sorted(self.tree_query_histogram.items())},
        }


class MembershipOracle:
    """Cache-fronted membership oracle over a simulated system under learning."""

    def __init__(self, sul: RegisterAutomaton):
        self.sul = sul
        self.stats = QueryStats()
        self.phase = LEARN_PHASE
        self._cache: Dict[DataWord, bool] = {}

    @property
    def alphabet(self) -> Tuple[Action, ...]:
        return self.sul.alphabet

    def membership(self, w: DataWord) -> bool:
        self.stats.raw_queries += 1
        if w in self._cache:
            return self._cache[w]
        answer = self.sul.accepts(w)
        self._cache[w] = answer
        self.stats.membership_queries += 1
        if self.phase == TEST_PHASE:
            self.stats.test_queries += 1
        else:
            self.stats.learn_queries += 1
        return answer

    def cached(self, w: DataWord) -> Optional[bool]:
        return self._cache.get(w)

    def answers(self) -> Dict[DataWord, bool]:
        return dict(self._cache)

    @contextmanager
    def testing(self) -> Iterator["MembershipOracle"]:
        previous = self.phase
        self.phase = TEST_PHASE
        try:
            yield self
        finally:
            self.phase = previous

#==============================================================================
#                          RANDOM-WALK EQUIVALENCE
#==============================================================================

def _random_word(alphabet: Sequence[Action], rng: np.random.Generator, max_depth: int,
                 reuse_probability: float) -> DataWord:
    length = int(rng.integers(1, max_depth + 1))
    word = EMPTY_WORD
    for _ in range(length):
        action = alphabet[int(rng.integers(len(alphabet)))]
        if action.arity == 0:
            word = word.append(DataSymbol(action))
            continue
        used = potential_values(word)[:-1]
        if used and rng.random() < reuse_probability:
            value = used[int(rng.integers(len(used)))]
        else:
            value = fresh_value(word)
        word = word.append(DataSymbol(action, value))
    return word


class RandomWalkEquivalenceOracle:
    """Random testing against the membership oracle; one generator per learning run."""

    def __init__(self, oracle: MembershipOracle, max_depth: int = DEFAULT_MAX_DEPTH,
                 walks: int = DEFAULT_WALKS, seed: Optional[int] = None,
                 reuse_probability: float = DEFAULT_REUSE_PROBABILITY):
        self.oracle = oracle
        self.max_depth = max_depth
        self.walks = walks
        self.reuse_probability = reuse_probability
        self.rng = np.random.default_rng(seed)

    def find_counterexample(self, hyp: RegisterAutomaton) -> Optional[DataWord]:
        self.oracle.stats.equivalence_queries += 1
        alphabet = self.oracle.alphabet
        with self.oracle.testing():
            for _ in range(self.walks):
                w = _random_word(alphabet, self.rng, self.max_depth, self.reuse_probability)
                if hyp.accepts(w) != self.oracle.membership(w):
                    self.oracle.stats.counterexamples += 1
                    return w
        return None


def find_counterexample_random(hyp: RegisterAutomaton, oracle: MembershipOracle,
                               max_depth: int = DEFAULT_MAX_DEPTH, walks: int = DEFAULT_WALKS,
                               seed: Optional[int] = None) -> Optional[DataWord]:
    return RandomWalkEquivalenceOracle(oracle, max_depth, walks, seed).find_counterexample(hyp)

#==============================================================================
#                          CANONICAL EXPLORATION
#==============================================================================

Configuration = Tuple[FrozenSet[RAState], ...]


def _live_values(configuration: Configuration) -> set:
    return {v for states in configuration for s in states for _, v in s.valuation}


def _canonical_key(configuration: Configuration, order: Sequence[int]) -> tuple:
    """Rename live values to their rank in first-use order."""
    rank = {v: i for i, v in enumerate(order)}
    return tuple(
        frozenset(RAState(s.location, tuple((x, rank[v]) for x, v in s.valuation)) for s in states)
        for states in configuration)


def _successors(automata: Sequence[RegisterAutomaton], configuration: Configuration,
                symbol: DataSymbol) -> Configuration:
    result = []
    for ra, states in zip(automata, configuration):
        following = set()
        for state in states:
            following.update(ra.step(state, symbol))
        result.append(frozenset(following))
    return tuple(result)


def explore(automata: Sequence[RegisterAutomaton], stop) -> Optional[DataWord]:
    """
    Breadth-first search over canonical joint configurations.

    Each configuration holds the set of reachable states of every automaton.
    From a configuration every action is tried with one fresh value first and
    then with each live value, which covers every equality class and makes
    the first counterexample of each length prefer fresh values. Returns the
    first word whose configuration satisfies ``stop``; the search is finite
    because configurations are keyed by their canonical renaming.
    """
    alphabet = automata[0].alphabet
    start: Configuration = tuple(frozenset([ra.initial_state()]) for ra in automata)
    if stop(start):
        return EMPTY_WORD
    queue = deque([(EMPTY_WORD, start, ())])
    visited = {_canonical_key(start, ())}
    while queue:
        word, configuration, order = queue.popleft()
        for action in alphabet:
            candidates = [None] if action.arity == 0 else [fresh_value(word)] + list(order)
            for value in candidates:
                symbol = DataSymbol(action, value)
                following = _successors(automata, configuration, symbol)
                extended = word.append(symbol)
                if stop(following):
                    return extended
                live = _live_values(following)
                next_order = tuple(v for v in order if v in live)
                if value is not None and value in live and value not in next_order:
                    next_order += (value,)
                key = _canonical_key(following, next_order)
                if key in visited:
                    continue
                visited.add(key)
                queue.append((extended, following, next_order))
    return None


def _accepting(ra: RegisterAutomaton, states: FrozenSet[RAState]) -> bool:
    return any(ra.is_accepting(s) for s in states)


def _check_alphabets(hyp: RegisterAutomaton, sul: RegisterAutomaton) -> None:
    if {(a.name, a.arity) for a in hyp.alphabet} != {(a.name, a.arity) for a in sul.alphabet}:
        raise OracleError("Hypothesis and system under learning use different alphabets")


def find_counterexample_exact(hyp: RegisterAutomaton, sul: RegisterAutomaton) -> Optional[DataWord]:
    """Shortest word on which hyp and sul disagree, or None."""
    _check_alphabets(hyp, sul)
    automata = (sul, hyp)
    w = explore(automata, lambda c: _accepting(sul, c[0]) != _accepting(hyp, c[1]))
    if w is not None and hyp.accepts(w) == sul.accepts(w):
        raise OracleError(f"Exploration returned {w}, on which both automata agree")
    return w


def find_nondeterminacy(ra: RegisterAutomaton) -> Optional[DataWord]:
    """Shortest word with both an accepting and a rejecting run, or None."""
    def mixed(configuration: Configuration) -> bool:
        labels = {ra.is_accepting(s) for s in configuration[0]}
        return len(labels) > 1
    return explore((ra,), mixed)


class ExactEquivalenceOracle:
    """White-box equivalence oracle; issues no membership queries."""

    def __init__(self, oracle: MembershipOracle):
        self.oracle = oracle

    def find_counterexample(self, hyp: RegisterAutomaton) -> Optional[DataWord]:
        self.oracle.stats.equivalence_queries += 1
        w = find_counterexample_exact(hyp, self.oracle.sul)
        if w is not None:
            self.oracle.stats.counterexamples += 1
        return w

#==============================================================================
#                          BRUTE FORCE
#==============================================================================

def canonical_words(alphabet: Sequence[Action], max_length: int) -> List[DataWord]:
    """All canonical data words up to max_length, shortest first."""
    words = [EMPTY_WORD]
    frontier = [EMPTY_WORD]
    for _ in range(max_length):
        extended = []
        for word in frontier:
            for action in alphabet:
                values = [None] if action.arity == 0 else potential_values(word)
                for value in values:
                    extended.append(word.append(DataSymbol(action, value)))
        words.extend(extended)
        frontier = extended
    return words
