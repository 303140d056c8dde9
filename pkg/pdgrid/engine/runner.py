# pdgrid/engine/runner.py
"""Running the process until it stabilises, repeats or runs out of rounds."""

import hashlib
import logging
import zlib
from collections import OrderedDict
from typing import Callable, Optional, TextIO

import numpy as np
import simplejson as json

from pdgrid.core.configuration import Configuration, weak_set
from pdgrid.core.strategy import CheatAdvantage
from pdgrid.core.topology import WINDOW
from pdgrid.engine.rounds import random_order
from pdgrid.engine.state import ProcessState
from pdgrid.engine.trace import EngineLimits, RoundTrace, RunResult, TerminationStatus
from pdgrid.errors import EscapedWindow, InvalidParams

logger = logging.getLogger(__name__)

Observer = Callable[[int, ProcessState, Optional[RoundTrace]], None]


def trajectory_record(round_index: int, trace: RoundTrace, state: ProcessState) -> dict:
    """One JSONL record; keys in fixed order."""
    return {
        'round': round_index,
        'weakCount': len(trace.weak_before),
        'flips': trace.flips,
        'density': float(state.density()),
    }


def _check_escape(state: ProcessState, vertices, margin: int, round_index: int):
    topology = state.topology
    field = int(state.field)
    for v in vertices:
        if state.strategies[v] != field and topology.boundary_distance(v) < margin:
            raise EscapedWindow(v, round_index)


class PeriodDetector:
    """Rolling map from 128-bit configuration hash to the round it was first seen.

    Only the most recent `window` rounds are kept, so a repeat is reported
    when the period is at most `window`. Hash hits are confirmed against the
    stored (compressed) bytes.
    """

    def __init__(self, window: int = 4096):
        if window < 1:
            raise InvalidParams(f'Period window must be positive, got {window}')
        self.window = window
        self._seen = OrderedDict()

    def __len__(self):
        return len(self._seen)

    def observe(self, data: bytes, round_index: int) -> Optional[int]:
        """Record data; returns the earlier round on a true repeat."""
        digest = hashlib.blake2b(data, digest_size=16).digest()
        hit = self._seen.get(digest)
        if hit is not None:
            earlier, packed = hit
            if zlib.decompress(packed) == data:
                return earlier
        self._seen[digest] = (round_index, zlib.compress(data, 1))
        self._seen.move_to_end(digest)
        while len(self._seen) > self.window:
            self._seen.popitem(last=False)
        return None


def run_to_termination(config: Configuration, rng: np.random.Generator,
                       cheat: CheatAdvantage, limits: Optional[EngineLimits] = None,
                       observer: Optional[Observer] = None,
                       trajectory: Optional[TextIO] = None) -> RunResult:
    """Iterate random rounds until stable, periodic or out of rounds.

    The weak set is maintained incrementally: after a round only the second
    neighbourhoods of flipped vertices are re-examined.

    Args:
        observer: Called as observer(t, state, trace) for t = 0 (trace None)
            and after every round.
        trajectory: Optional text stream receiving one JSON line per round.

    Raises:
        EscapedWindow: In window mode, when a non-field vertex comes within
            limits.escape_margin of the boundary.
    """
    limits = limits or EngineLimits()
    topology = config.topology
    is_window = topology.kind == WINDOW
    state = ProcessState(config, cheat)
    weak = weak_set(config, cheat)
    if is_window:
        _check_escape(state, config.non_field_vertices(), limits.escape_margin, 0)

    periods = PeriodDetector(limits.period_window)
    periods.observe(state.to_bytes(), 0)
    if observer:
        observer(0, state, None)

    round_index = 0
    while True:
        if not weak:
            status = TerminationStatus.stable(round_index)
            break
        if round_index >= limits.max_rounds:
            status = TerminationStatus.max_rounds(round_index)
            break

        order = random_order(weak, rng)
        trace = state.play(order, tuple(sorted(weak)))
        round_index += 1

        flipped = trace.flipped_vertices
        if is_window:
            _check_escape(state, flipped, limits.escape_margin, round_index)
        candidates = set()
        for v in flipped:
            candidates |= topology.second_neighborhood(v)
        for u in candidates:
            if state.is_weak(u):
                weak.add(u)
            else:
                weak.discard(u)

        if trajectory is not None:
            trajectory.write(json.dumps(trajectory_record(round_index, trace, state)) + '\n')
        if observer:
            observer(round_index, state, trace)

        earlier = periods.observe(state.to_bytes(), round_index)
        if earlier is not None:
            status = TerminationStatus.periodic(earlier, round_index)
            break

    logger.debug(f'Run ended: {status.label()} after {round_index} rounds')
    return RunResult(state.snapshot(), status, round_index, state.density())
