# pdgrid/engine/rounds.py
"""Single rounds: permutation-ordered subrounds over the weak set."""

from typing import Sequence, Set, Tuple

import numpy as np

from pdgrid.core.configuration import Configuration, cooperator_counts, weak_set
from pdgrid.core.strategy import CheatAdvantage
from pdgrid.engine.state import ProcessState
from pdgrid.engine.trace import RoundTrace
from pdgrid.errors import PermMismatch


def check_permutation(order: Sequence[int], weak: Set[int]):
    """Raise PermMismatch unless order lists every weak vertex exactly once."""
    if len(order) != len(weak) or set(order) != weak:
        raise PermMismatch(
            f'Order of length {len(order)} is not a permutation of the '
            f'{len(weak)} weak vertices'
        )


def apply_round(config: Configuration, order: Sequence[int],
                cheat: CheatAdvantage) -> Tuple[Configuration, RoundTrace]:
    """Apply one round in a fixed order.

    Each vertex flips only if it is still weak against the configuration
    left by the previous subround.

    Raises:
        PermMismatch: If order is not a permutation of the weak set.
    """
    weak = weak_set(config, cheat)
    check_permutation(order, weak)
    state = ProcessState(config, cheat)
    trace = state.play(order, tuple(sorted(weak)))
    return state.snapshot(), trace


def random_order(weak: Set[int], rng: np.random.Generator) -> Tuple[int, ...]:
    """Uniform random permutation of the weak set, sorted first for determinism."""
    ordered = sorted(weak)
    return tuple(ordered[i] for i in rng.permutation(len(ordered)).tolist())


def step_random(config: Configuration, rng: np.random.Generator,
                cheat: CheatAdvantage) -> Tuple[Configuration, RoundTrace]:
    """Sample a uniform update order and apply one round."""
    order = random_order(weak_set(config, cheat), rng)
    return apply_round(config, order, cheat)


def recompute_vs_incremental(config: Configuration, trace: RoundTrace) -> bool:
    """Replay a round with full recomputation after every subround.

    Returns True iff the counts written incrementally, as recorded in the
    trace, agree with a from-scratch count over all vertices each time.
    """
    claimed = cooperator_counts(config)
    working = config.strategies.copy()
    field = int(config.field) if config.field is not None else 0
    table = config.topology.neighbor_table
    for v, did_flip, touched in zip(trace.order, trace.flipped, trace.touched):
        if not did_flip:
            if touched:
                return False
            continue
        working[v] ^= 1
        for u, count in touched:
            claimed[u] = count
        full = np.append(working, np.uint8(field)).astype(np.int64)[table].sum(axis=1)
        if not np.array_equal(claimed, full):
            return False
    return True
