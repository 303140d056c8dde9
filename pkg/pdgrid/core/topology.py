# pdgrid/core/topology.py
"""Cycle, torus and window topologies with flat vertex indexing."""

from functools import cached_property
from typing import List, Tuple

import numpy as np

from pdgrid.errors import InvalidParams

CYCLE = 'cycle'
TORUS = 'torus'
WINDOW = 'window'
KINDS = (CYCLE, TORUS, WINDOW)


class Topology:
    """Graph on which the process runs.

    Vertices are numbered 0..V-1 row-major. In window mode the index V
    stands for every exterior vertex; its strategy is the fixed field.
    """

    def __init__(self, kind: str, rows: int, cols: int):
        if kind not in KINDS:
            raise InvalidParams(f'Unknown topology kind: {kind!r}')
        if kind == CYCLE and (rows != 1 or cols < 3):
            raise InvalidParams('Cycle needs at least 3 vertices')
        if kind == TORUS and (rows != cols or rows < 3):
            raise InvalidParams('Torus must be square with side at least 3')
        if kind == WINDOW and (rows < 1 or cols < 1):
            raise InvalidParams('Window must have positive dimensions')
        self.kind = kind
        self.rows = rows
        self.cols = cols

    @classmethod
    def cycle(cls, n: int) -> 'Topology':
        return cls(CYCLE, 1, n)

    @classmethod
    def torus(cls, n: int) -> 'Topology':
        return cls(TORUS, n, n)

    @classmethod
    def window(cls, rows: int, cols: int) -> 'Topology':
        return cls(WINDOW, rows, cols)

    @property
    def vertex_count(self) -> int:
        return self.rows * self.cols

    @property
    def exterior(self) -> int:
        """Sentinel index used for exterior reads."""
        return self.vertex_count

    @property
    def degree(self) -> int:
        return 2 if self.kind == CYCLE else 4

    @property
    def size(self) -> int:
        """Side length for a torus, vertex count for a cycle."""
        return self.cols

    def index(self, row: int, col: int) -> int:
        return row * self.cols + col

    def coords(self, v: int) -> Tuple[int, int]:
        return divmod(v, self.cols)

    def check_vertex(self, v: int):
        if not 0 <= v < self.vertex_count:
            raise InvalidParams(f'Vertex {v} out of range for {self!r}')

    @cached_property
    def neighbor_table(self) -> np.ndarray:
        """Array of shape (V, degree); exterior neighbours hold V."""
        if self.kind == CYCLE:
            idx = np.arange(self.cols)
            return np.stack([(idx - 1) % self.cols, (idx + 1) % self.cols], axis=1)

        r, c = np.divmod(np.arange(self.vertex_count), self.cols)
        if self.kind == TORUS:
            n = self.cols
            return np.stack([
                ((r - 1) % n) * n + c,
                ((r + 1) % n) * n + c,
                r * n + (c - 1) % n,
                r * n + (c + 1) % n,
            ], axis=1)

        ext = self.vertex_count
        up = np.where(r > 0, (r - 1) * self.cols + c, ext)
        down = np.where(r < self.rows - 1, (r + 1) * self.cols + c, ext)
        left = np.where(c > 0, r * self.cols + c - 1, ext)
        right = np.where(c < self.cols - 1, r * self.cols + c + 1, ext)
        return np.stack([up, down, left, right], axis=1)

    @cached_property
    def adjacency(self) -> List[Tuple[int, ...]]:
        """Neighbour tuples per vertex, exterior sentinel included."""
        return [tuple(row) for row in self.neighbor_table.tolist()]

    @cached_property
    def interior_adjacency(self) -> List[Tuple[int, ...]]:
        """Neighbour tuples without the exterior sentinel."""
        ext = self.exterior
        return [tuple(u for u in row if u != ext) for row in self.adjacency]

    def second_neighborhood(self, v: int) -> set:
        """Closed second neighbourhood N²[v] restricted to real vertices."""
        adj = self.interior_adjacency
        result = {v}
        for u in adj[v]:
            result.add(u)
            result.update(adj[u])
        return result

    def distance(self, u: int, v: int) -> int:
        """Graph distance between two vertices."""
        ur, uc = self.coords(u)
        vr, vc = self.coords(v)
        dr, dc = abs(ur - vr), abs(uc - vc)
        if self.kind != WINDOW:
            dr = min(dr, self.rows - dr)
            dc = min(dc, self.cols - dc)
        return dr + dc

    def boundary_distance(self, v: int) -> int:
        """Cells between v and the nearest window edge (0 on the edge row)."""
        r, c = self.coords(v)
        return min(r, c, self.rows - 1 - r, self.cols - 1 - c)

    def __eq__(self, other):
        return (isinstance(other, Topology) and other.kind == self.kind
                and other.rows == self.rows and other.cols == self.cols)

    def __hash__(self):
        return hash((self.kind, self.rows, self.cols))

    def __repr__(self):
        if self.kind == WINDOW:
            return f'<Topology window {self.rows}x{self.cols}>'
        return f'<Topology {self.kind} {self.size}>'
