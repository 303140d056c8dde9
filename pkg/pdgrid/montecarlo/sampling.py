# pdgrid/montecarlo/sampling.py
"""Random initial configurations, per-trial seeds and the cluster census."""

from collections import Counter
from typing import Dict, Iterable, Tuple

import numpy as np

from pdgrid.clusters.embedding import cluster_shape, clusters_of
from pdgrid.clusters.polyomino import STEPS, Cell
from pdgrid.core.configuration import Configuration
from pdgrid.core.strategy import Strategy
from pdgrid.core.topology import WINDOW, Topology
from pdgrid.errors import InvalidParams

CENSUS_MAX_SIZE = 5


def check_probability(p: float):
    if not 0 < p < 1:
        raise InvalidParams(f'p must lie strictly between 0 and 1, got {p}')


def derive_seed(master_seed: int, p_index: int, replicate: int) -> int:
    """64-bit trial seed from (master seed, p index, replicate index).

    Uses numpy's SeedSequence hashing, which is stable across platforms.
    """
    sequence = np.random.SeedSequence(master_seed, spawn_key=(p_index, replicate))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def random_config(topology: Topology, p: float, seed: int) -> Configuration:
    """Independent Bernoulli(p) cooperators drawn from default_rng(seed)."""
    check_probability(p)
    if topology.kind == WINDOW:
        raise InvalidParams('Random configurations live on cycles and tori')
    rng = np.random.default_rng(seed)
    strategies = (rng.random(topology.vertex_count) < p).astype(np.uint8)
    return Configuration(topology, strategies)


def cluster_census(config: Configuration,
                   max_size: int = CENSUS_MAX_SIZE) -> Dict[Tuple[Cell, ...], int]:
    """Number of cooperator clusters of each fixed shape with at most max_size cells."""
    census = Counter()
    for component in clusters_of(config, Strategy.COOPERATE):
        if len(component) <= max_size:
            census[cluster_shape(config, component).cells] += 1
    return dict(census)


def perimeter(cells: Iterable[Cell]) -> int:
    """Number of cells outside the shape adjacent to it."""
    cell_set = set(cells)
    border = {(r + dr, c + dc) for r, c in cell_set for dr, dc in STEPS}
    return len(border - cell_set)


def expected_cluster_count(cells: Iterable[Cell], n: int, p: float) -> float:
    """Expected number of clusters of a fixed shape on the n x n torus: n^2 p^k (1-p)^c."""
    cells = tuple(cells)
    return n * n * p ** len(cells) * (1 - p) ** perimeter(cells)
