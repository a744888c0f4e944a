"""
Random register automata for scaling studies.

A seeded random DFA skeleton over unary actions is turned into a register
automaton by replacing a fraction of its transitions with store-and-compare
gadgets: a chosen transition is split into p==x1 and p!=x1 branches with
different targets, and every transition into its source stores p in x1.
Candidates are validated and checked for determinacy; failed attempts are
retried with the same generator.
"""

from typing import Dict, List, Optional

import numpy as np

from ralearn.automaton import (
    PARAM, Guard, Location, ModelValidationError,
    RegisterAutomaton, TRUE_GUARD, Transition,
)
from ralearn.oracle import find_nondeterminacy
from ralearn.words import Action

DEFAULT_LOCATIONS = 4
DEFAULT_ACTIONS = 2
DEFAULT_DATA_FRACTION = 0.5
DEFAULT_ACCEPTING_PROBABILITY = 0.5
MAX_RETRIES = 100


class GenerationError(Exception):
    """Exception raised when no determinate automaton is found within the retry budget."""
    pass


def _skeleton(rng: np.random.Generator, locations: int, actions: int) -> Dict[tuple, int]:
    """Complete transition function whose first edges form a spanning tree from q0."""
    delta: Dict[tuple, int] = {}
    for target in range(1, locations):
        free = [(s, a) for s in range(target) for a in range(actions) if (s, a) not in delta]
        source, action = free[int(rng.integers(len(free)))]
        delta[(source, action)] = target
    for source in range(locations):
        for action in range(actions):
            if (source, action) not in delta:
                delta[(source, action)] = int(rng.integers(locations))
    return delta


def _assignment(target: int, data_locations: set) -> tuple:
    return (("x1", PARAM),) if target in data_locations else ()


def _attempt(rng: np.random.Generator, locations: int, actions: int, data_fraction: float) -> RegisterAutomaton:
    alphabet = [Action(f"a{i}", 1) for i in range(actions)]
    delta = _skeleton(rng, locations, actions)

    # q0 holds no registers, so gadgets split transitions leaving other locations
    eligible = [key for key in sorted(delta) if key[0] != 0]
    count = 0
    if data_fraction > 0 and eligible:
        count = min(len(eligible), max(1, int(round(data_fraction * len(delta)))))
    chosen = [eligible[int(i)] for i in rng.choice(len(eligible), size=count, replace=False)] if count else []
    split = set(chosen)
    data_locations = {source for source, _ in split}

    accepting = rng.random(locations) < DEFAULT_ACCEPTING_PROBABILITY
    accepting[0] = True
    locs = [Location(f"q{q}", ("x1",) if q in data_locations else (), bool(accepting[q]))
            for q in range(locations)]

    transitions: List[Transition] = []
    for (source, action), target in sorted(delta.items()):
        if (source, action) in split:
            others = [q for q in range(locations) if q != target]
            other = others[int(rng.integers(len(others)))] if others else target
            equal, differ = Guard.equals("x1"), Guard.differs(["x1"])
            transitions.append(Transition(f"q{source}", alphabet[action], equal,
                                          _assignment(other, data_locations), f"q{other}"))
            transitions.append(Transition(f"q{source}", alphabet[action], differ,
                                          _assignment(target, data_locations), f"q{target}"))
        else:
            transitions.append(Transition(f"q{source}", alphabet[action], TRUE_GUARD,
                                          _assignment(target, data_locations), f"q{target}"))
    return RegisterAutomaton(alphabet, locs, "q0", transitions)


def generate_ra(locations: int = DEFAULT_LOCATIONS, actions: int = DEFAULT_ACTIONS,
                data_fraction: float = DEFAULT_DATA_FRACTION, seed: Optional[int] = None,
                max_retries: int = MAX_RETRIES) -> RegisterAutomaton:
    """Random determinate register automaton; the same seed gives the same automaton."""
    if locations < 1 or actions < 1:
        raise GenerationError("At least one location and one action are required")
    if not 0.0 <= data_fraction <= 1.0:
        raise GenerationError(f"data_fraction must lie in [0, 1], got {data_fraction}")
    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        try:
            ra = _attempt(rng, locations, actions, data_fraction)
        except ModelValidationError:
            continue
        if find_nondeterminacy(ra) is None:
            return ra
    raise GenerationError(f"No determinate automaton after {max_retries} attempts (seed {seed})")
