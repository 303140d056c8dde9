# pdgrid/engine/state.py
"""Mutable working state with incrementally maintained neighbour counts."""

from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from pdgrid.core.configuration import Configuration, cooperator_counts
from pdgrid.core.strategy import CheatAdvantage, Strategy
from pdgrid.engine.trace import RoundTrace
from pdgrid.errors import UnresolvedTie


class ProcessState:
    """Strategies and cooperating-neighbour counts of one run.

    Index V (the exterior sentinel) holds the window field and the count a
    field vertex sees; it is never updated.
    """

    def __init__(self, config: Configuration, cheat: CheatAdvantage):
        topology = config.topology
        self.topology = topology
        self.field = config.field
        self.cheat = cheat
        self.adjacency = topology.adjacency
        self.exterior = topology.exterior
        self.vertex_count = topology.vertex_count
        self.strategies = bytearray(config.extended.tobytes())
        ext_count = 0
        if config.field == Strategy.COOPERATE:
            ext_count = topology.degree
        self.counts = cooperator_counts(config).tolist() + [ext_count]
        self.cooperators = config.cooperator_count()
        self._regime = cheat.in_regime
        self._units = {0: cheat.value, 1: Fraction(1)}

    def is_weak(self, v: int) -> bool:
        """Whether v is weak against the current strategies."""
        s = self.strategies
        c = self.counts
        if self._regime:
            best = 2 * c[v] + 1 - s[v]
            for u in self.adjacency[v]:
                key = 2 * c[u] + 1 - s[u]
                if key > best:
                    best = key
            return (best & 1) == s[v]

        units = self._units
        top = units[s[v]] * c[v]
        roles = {s[v]}
        for u in self.adjacency[v]:
            value = units[s[u]] * c[u]
            if value > top:
                top = value
                roles = {s[u]}
            elif value == top:
                roles.add(s[u])
        if len(roles) > 1:
            raise UnresolvedTie(v)
        return roles.pop() != s[v]

    def flip(self, v: int) -> Tuple[Tuple[int, int], ...]:
        """Negate v's strategy; returns the (vertex, count) pairs updated."""
        s = self.strategies
        s[v] ^= 1
        delta = 1 if s[v] else -1
        self.cooperators += delta
        c = self.counts
        ext = self.exterior
        touched = []
        for u in self.adjacency[v]:
            if u != ext:
                c[u] += delta
                touched.append((u, c[u]))
        return tuple(touched)

    def play(self, order: Sequence[int],
             weak_before: Optional[Tuple[int, ...]] = None) -> RoundTrace:
        """Run one round's subrounds in the given order."""
        flipped = []
        touched = []
        for v in order:
            if self.is_weak(v):
                touched.append(self.flip(v))
                flipped.append(True)
            else:
                touched.append(())
                flipped.append(False)
        if weak_before is None:
            weak_before = tuple(sorted(order))
        return RoundTrace(weak_before, tuple(order), tuple(flipped), tuple(touched))

    def strategy_array(self) -> np.ndarray:
        return np.frombuffer(bytes(self.strategies[:self.vertex_count]), dtype=np.uint8)

    def to_bytes(self) -> bytes:
        return bytes(self.strategies[:self.vertex_count])

    def density(self) -> Fraction:
        return Fraction(self.cooperators, self.vertex_count)

    def snapshot(self) -> Configuration:
        return Configuration(self.topology, self.strategy_array(), self.field)
