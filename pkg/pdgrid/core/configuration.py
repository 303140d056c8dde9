# pdgrid/core/configuration.py
"""Configurations and the score/weakness rules evaluated on them."""

import hashlib
import logging
from fractions import Fraction
from typing import Iterable, Optional, Set

import numpy as np

from pdgrid.core.strategy import CheatAdvantage, ScoreRank, Strategy, regime_key
from pdgrid.core.topology import WINDOW, Topology
from pdgrid.errors import InvalidParams, UnresolvedTie

logger = logging.getLogger(__name__)


class Configuration:
    """Assignment of a strategy to every vertex of a topology.

    The strategy array is read-only; derive new configurations with
    `with_flips` or `with_strategies`.
    """

    def __init__(self, topology: Topology, strategies, field: Optional[Strategy] = None):
        arr = np.array(strategies, dtype=np.uint8).reshape(-1)
        if arr.size != topology.vertex_count:
            raise InvalidParams(
                f'Expected {topology.vertex_count} strategies, got {arr.size}'
            )
        if arr.size and arr.max() > 1:
            raise InvalidParams('Strategies must be 0 (defect) or 1 (cooperate)')
        if topology.kind == WINDOW:
            if field is None:
                raise InvalidParams('Window configurations need a field strategy')
            field = Strategy(field)
        elif field is not None:
            raise InvalidParams('Only window configurations carry a field')
        arr.setflags(write=False)
        self.topology = topology
        self.strategies = arr
        self.field = field

    @classmethod
    def uniform(cls, topology: Topology, strategy: Strategy,
                field: Optional[Strategy] = None) -> 'Configuration':
        return cls(topology, np.full(topology.vertex_count, int(strategy), dtype=np.uint8), field)

    def strategy(self, v: int) -> Strategy:
        if v == self.topology.exterior and self.field is not None:
            return self.field
        self.topology.check_vertex(v)
        return Strategy(int(self.strategies[v]))

    def with_strategies(self, strategies) -> 'Configuration':
        return Configuration(self.topology, strategies, self.field)

    def with_flips(self, vertices: Iterable[int]) -> 'Configuration':
        arr = self.strategies.copy()
        for v in vertices:
            arr[v] ^= 1
        return self.with_strategies(arr)

    @property
    def extended(self) -> np.ndarray:
        """Strategies with the field value appended at the exterior index."""
        field = int(self.field) if self.field is not None else 0
        return np.append(self.strategies, np.uint8(field))

    def to_bytes(self) -> bytes:
        return self.strategies.tobytes()

    def digest(self) -> bytes:
        """128-bit hash of the strategy bytes."""
        return hashlib.blake2b(self.to_bytes(), digest_size=16).digest()

    def cooperator_count(self) -> int:
        return int(self.strategies.sum())

    def cooperators(self) -> Set[int]:
        return set(np.flatnonzero(self.strategies).tolist())

    def non_field_vertices(self) -> Set[int]:
        """Vertices whose strategy differs from the window field."""
        if self.field is None:
            raise InvalidParams('Only window configurations have a field')
        return set(np.flatnonzero(self.strategies != int(self.field)).tolist())

    def __eq__(self, other):
        return (isinstance(other, Configuration) and other.topology == self.topology
                and other.field == self.field
                and np.array_equal(other.strategies, self.strategies))

    def __hash__(self):
        return hash((self.topology, self.field, self.to_bytes()))

    def __repr__(self):
        return (f'<Configuration {self.topology!r} '
                f'cooperators={self.cooperator_count()}/{self.topology.vertex_count}>')


def cooperator_counts(config: Configuration) -> np.ndarray:
    """Cooperating-neighbour count of every vertex, field reads included."""
    ext = config.extended.astype(np.int64)
    return ext[config.topology.neighbor_table].sum(axis=1)


def cooperator_neighbors(config: Configuration, v: int) -> int:
    config.topology.check_vertex(v)
    ext = config.extended
    return int(sum(int(ext[u]) for u in config.topology.adjacency[v]))


def exterior_rank(config: Configuration, cheat: CheatAdvantage) -> ScoreRank:
    """Rank of a field vertex surrounded by the field."""
    degree = config.topology.degree
    coop = degree if config.field == Strategy.COOPERATE else 0
    return ScoreRank.of(config.field, coop, cheat)


def score(config: Configuration, v: int, cheat: CheatAdvantage) -> ScoreRank:
    """Exact score of vertex v."""
    return ScoreRank.of(config.strategy(v), cooperator_neighbors(config, v), cheat)


def weak_set(config: Configuration, cheat: CheatAdvantage) -> Set[int]:
    """Vertices whose best closed-neighbourhood vertex holds the other strategy.

    Raises:
        UnresolvedTie: For T outside (1, 4/3) when the best rank is shared by
            both strategies.
    """
    if not cheat.in_regime:
        return _weak_set_general(config, cheat)

    s = config.strategies.astype(np.int64)
    counts = cooperator_counts(config)
    keys = 2 * counts + (1 - s)
    ext_key = 0
    if config.field is not None:
        rank = exterior_rank(config, cheat)
        ext_key = regime_key(int(rank.role), rank.coop_neighbors)
    keys_ext = np.append(keys, ext_key)
    best = np.maximum(keys, keys_ext[config.topology.neighbor_table].max(axis=1))
    return set(np.flatnonzero((best & 1) == s).tolist())


def _weak_set_general(config: Configuration, cheat: CheatAdvantage) -> Set[int]:
    counts = cooperator_counts(config).tolist()
    strategies = config.strategies.tolist()
    adjacency = config.topology.adjacency
    ext = config.topology.exterior
    unit = {0: cheat.value, 1: Fraction(1)}
    ext_value = None
    if config.field is not None:
        ext_rank = exterior_rank(config, cheat)
        ext_value = (ext_rank.value, int(ext_rank.role))

    def value(u):
        if u == ext:
            return ext_value
        return (unit[strategies[u]] * counts[u], strategies[u])

    result = set()
    for v in range(config.topology.vertex_count):
        ranks = [value(v)] + [value(u) for u in adjacency[v]]
        top = max(r[0] for r in ranks)
        roles = {r[1] for r in ranks if r[0] == top}
        if len(roles) > 1:
            raise UnresolvedTie(v)
        if roles.pop() != strategies[v]:
            result.add(v)
    return result


def density(config: Configuration) -> Fraction:
    """Fraction of (interior) vertices that cooperate."""
    return Fraction(config.cooperator_count(), config.topology.vertex_count)


def initial_persistent_cooperators(config: Configuration) -> Set[int]:
    """Cooperators whose whole second neighbourhood cooperates.

    Such a vertex and its neighbours all score the maximum, so no vertex of
    the neighbourhood can ever become weak toward defection.
    """
    s = config.strategies
    table = config.topology.neighbor_table
    ext = config.extended
    closed = ext[table].min(axis=1) & s
    closed_ext = np.append(closed, ext[-1])
    second = closed_ext[table].min(axis=1) & closed
    return set(np.flatnonzero(second).tolist())
