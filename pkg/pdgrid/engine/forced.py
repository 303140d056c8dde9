# pdgrid/engine/forced.py
"""Successor enumeration, forced-configuration detection and collapsing."""

import itertools
import logging
from collections import Counter
from enum import Enum
from typing import Callable, Dict, FrozenSet, Optional, Tuple

from pdgrid.core.configuration import Configuration, weak_set
from pdgrid.core.strategy import CheatAdvantage
from pdgrid.engine.state import ProcessState
from pdgrid.errors import DepthExceeded, InvalidParams, ThresholdExceeded

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 9


class Forcedness(Enum):
    FORCED = 'forced'
    NOT_FORCED = 'not_forced'
    UNKNOWN = 'unknown'


def successor_counts(config: Configuration, cheat: CheatAdvantage,
                     method: str = 'memo',
                     threshold: int = DEFAULT_THRESHOLD) -> Dict[FrozenSet[int], int]:
    """Number of update orders producing each set of flipped vertices.

    The counts sum to |W|!. `full` walks every permutation; `memo` shares
    work between orders through the (processed, flipped) subset pair, which
    fully determines the state mid-round.

    Raises:
        ThresholdExceeded: If |W| exceeds threshold.
    """
    weak = sorted(weak_set(config, cheat))
    if len(weak) > threshold:
        raise ThresholdExceeded(len(weak), threshold)
    if not weak:
        return {frozenset(): 1}
    state = ProcessState(config, cheat)
    if method == 'full':
        return _full_counts(state, weak)
    if method == 'memo':
        return _memo_counts(state, weak)
    raise InvalidParams(f'Unknown enumeration method: {method!r}')


def _full_counts(state: ProcessState, weak) -> Dict[FrozenSet[int], int]:
    counts = Counter()
    for order in itertools.permutations(weak):
        flipped = []
        for v in order:
            if state.is_weak(v):
                state.flip(v)
                flipped.append(v)
        counts[frozenset(flipped)] += 1
        for v in reversed(flipped):
            state.flip(v)
    return dict(counts)


def _memo_counts(state: ProcessState, weak) -> Dict[FrozenSet[int], int]:
    n = len(weak)
    done = (1 << n) - 1
    memo = {}

    def expand(processed: int, flipped: int) -> Counter:
        if processed == done:
            return Counter({flipped: 1})
        key = (processed, flipped)
        if key in memo:
            return memo[key]
        out = Counter()
        for i in range(n):
            bit = 1 << i
            if processed & bit:
                continue
            v = weak[i]
            if state.is_weak(v):
                state.flip(v)
                sub = expand(processed | bit, flipped | bit)
                state.flip(v)
            else:
                sub = expand(processed | bit, flipped)
            out.update(sub)
        memo[key] = out
        return out

    result = expand(0, 0)
    return {
        frozenset(weak[i] for i in range(n) if mask >> i & 1): count
        for mask, count in result.items()
    }


def _well_separated(config: Configuration, weak) -> bool:
    topology = config.topology
    return all(topology.second_neighborhood(v) & weak == {v} for v in weak)


def is_forced(config: Configuration, cheat: CheatAdvantage, mode: str = 'auto',
              threshold: int = DEFAULT_THRESHOLD) -> Forcedness:
    """Whether every update order leads to the same next configuration.

    Modes: `exact` enumerates orders, `sufficient` only recognises weak
    vertices pairwise more than distance 2 apart, `auto` picks exact when
    |W| <= threshold.
    """
    weak = weak_set(config, cheat)
    if not weak:
        return Forcedness.FORCED
    if mode == 'auto':
        mode = 'exact' if len(weak) <= threshold else 'sufficient'
    if mode == 'sufficient':
        return Forcedness.FORCED if _well_separated(config, weak) else Forcedness.UNKNOWN
    if mode != 'exact':
        raise InvalidParams(f'Unknown forced mode: {mode!r}')
    counts = successor_counts(config, cheat, threshold=threshold)
    return Forcedness.FORCED if len(counts) == 1 else Forcedness.NOT_FORCED


def forced_successor(config: Configuration, cheat: CheatAdvantage,
                     threshold: int = DEFAULT_THRESHOLD) -> Optional[Configuration]:
    """The unique successor of a forced configuration, else None.

    Unknown counts as not forced.
    """
    weak = weak_set(config, cheat)
    if not weak:
        return None
    if len(weak) > threshold:
        if _well_separated(config, weak):
            return config.with_flips(weak)
        return None
    counts = successor_counts(config, cheat, threshold=threshold)
    if len(counts) != 1:
        return None
    return config.with_flips(next(iter(counts)))


def collapse_forced(config: Configuration, cheat: CheatAdvantage, max_forced_depth: int,
                    threshold: int = DEFAULT_THRESHOLD,
                    normalize: Optional[Callable[[Configuration], Configuration]] = None
                    ) -> Tuple[Configuration, int]:
    """Follow forced rounds to the next basic time step.

    Args:
        normalize: Optional hook applied after every forced round, used to
            re-centre window configurations that grow.

    Returns:
        The first non-forced (or stable) configuration and the number of
        rounds collapsed.

    Raises:
        DepthExceeded: If more than max_forced_depth rounds are forced.
    """
    steps = 0
    while True:
        successor = forced_successor(config, cheat, threshold)
        if successor is None:
            return config, steps
        if steps >= max_forced_depth:
            raise DepthExceeded(f'More than {max_forced_depth} forced rounds')
        config = normalize(successor) if normalize else successor
        steps += 1
