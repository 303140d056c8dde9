# pdgrid/clusters/embedding.py
"""Placing cell sets into window fields and reading clusters back out."""

from collections import deque
from typing import Iterable, List, Tuple

import numpy as np

from pdgrid.clusters.polyomino import Cell, Polyomino, normalize
from pdgrid.core.configuration import Configuration
from pdgrid.core.strategy import Strategy
from pdgrid.core.topology import CYCLE, WINDOW, Topology
from pdgrid.errors import InvalidParams

MIN_MARGIN = 2


def embed(cells: Iterable[Cell], field: Strategy, margin: int) -> Configuration:
    """Window configuration with cells set to the non-field strategy.

    The cells are centred with at least `margin` field cells on every side.

    Raises:
        InvalidParams: If margin < 2.
    """
    if margin < MIN_MARGIN:
        raise InvalidParams(f'Embedding margin must be at least {MIN_MARGIN}, got {margin}')
    cells = normalize(cells)
    if not cells:
        raise InvalidParams('Nothing to embed')
    height = max(r for r, _ in cells) + 1
    width = max(c for _, c in cells) + 1
    topology = Topology.window(height + 2 * margin, width + 2 * margin)
    field = Strategy(field)
    grid = np.full((topology.rows, topology.cols), int(field), dtype=np.uint8)
    for r, c in cells:
        grid[r + margin, c + margin] = 1 - int(field)
    return Configuration(topology, grid.reshape(-1), field)


def window_cells(config: Configuration) -> Tuple[Cell, ...]:
    """Normalised coordinates of the non-field vertices of a window."""
    topology = config.topology
    return normalize(topology.coords(v) for v in config.non_field_vertices())


def reembed(config: Configuration, margin: int) -> Configuration:
    """Re-centre a window's non-field cells when they drift toward the edge."""
    vertices = config.non_field_vertices()
    if not vertices:
        return config
    topology = config.topology
    if min(topology.boundary_distance(v) for v in vertices) >= margin:
        return config
    return embed(window_cells(config), config.field, margin)


def vertex_cells(config: Configuration, vertices: Iterable[int]) -> Tuple[Cell, ...]:
    topology = config.topology
    return normalize(topology.coords(v) for v in vertices)


def clusters_of(config: Configuration, strategy: Strategy) -> List[List[int]]:
    """Maximal edge-connected vertex sets holding `strategy`, sorted by first vertex."""
    strategies = config.strategies
    adjacency = config.topology.interior_adjacency
    target = int(strategy)
    seen = set()
    result = []
    for start in np.flatnonzero(strategies == target).tolist():
        if start in seen:
            continue
        seen.add(start)
        component = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in adjacency[v]:
                if u not in seen and strategies[u] == target:
                    seen.add(u)
                    component.append(u)
                    queue.append(u)
        result.append(sorted(component))
    return result


def cluster_shape(config: Configuration, component: List[int]) -> Polyomino:
    """Shape of a cluster, unwrapping torus and cycle coordinates."""
    topology = config.topology
    if topology.kind == WINDOW:
        return Polyomino.of(vertex_cells(config, component))
    member = set(component)
    steps = ((0, -1), (0, 1)) if topology.kind == CYCLE else ((-1, 0), (1, 0), (0, -1), (0, 1))
    start = component[0]
    offsets = {start: (0, 0)}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        r, c = offsets[v]
        for u, (dr, dc) in zip(topology.adjacency[v], steps):
            if u in member and u not in offsets:
                offsets[u] = (r + dr, c + dc)
                queue.append(u)
    return Polyomino(normalize(offsets.values()))
