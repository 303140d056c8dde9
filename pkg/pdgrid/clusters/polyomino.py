# pdgrid/clusters/polyomino.py
"""Fixed polyominoes, dihedral symmetry and convexity."""

from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple

from pdgrid.errors import InvalidParams

Cell = Tuple[int, int]

MAX_ORDER = 8

# (row, col) -> (a*row + b*col, c*row + d*col)
SYMMETRIES = (
    (1, 0, 0, 1),     # identity
    (0, 1, -1, 0),    # rotate 90
    (-1, 0, 0, -1),   # rotate 180
    (0, -1, 1, 0),    # rotate 270
    (1, 0, 0, -1),    # mirror columns
    (-1, 0, 0, 1),    # mirror rows
    (0, 1, 1, 0),     # transpose
    (0, -1, -1, 0),   # anti-transpose
)

STEPS = ((-1, 0), (1, 0), (0, -1), (0, 1))


def normalize(cells: Iterable[Cell]) -> Tuple[Cell, ...]:
    """Translate so min row = min col = 0; sorted tuple."""
    cells = list(cells)
    if not cells:
        return ()
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return tuple(sorted((r - r0, c - c0) for r, c in cells))


def transform(cells: Iterable[Cell], symmetry: int) -> Tuple[Cell, ...]:
    a, b, c, d = SYMMETRIES[symmetry]
    return normalize((a * r + b * col, c * r + d * col) for r, col in cells)


@dataclass(frozen=True)
class Polyomino:
    """Edge-connected cell set in canonical translation."""

    cells: Tuple[Cell, ...]

    @classmethod
    def of(cls, cells: Iterable[Cell]) -> 'Polyomino':
        cells = normalize(cells)
        if not cells:
            raise InvalidParams('A polyomino needs at least one cell')
        if not _connected(cells):
            raise InvalidParams('Cells are not edge-connected')
        return cls(cells)

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def height(self) -> int:
        return max(r for r, _ in self.cells) + 1

    @property
    def width(self) -> int:
        return max(c for _, c in self.cells) + 1

    @property
    def cell_set(self) -> FrozenSet[Cell]:
        return frozenset(self.cells)

    def image(self, symmetry: int) -> 'Polyomino':
        return Polyomino(transform(self.cells, symmetry))

    def canonical_form(self) -> Tuple[Cell, ...]:
        """Smallest encoding over the 8 dihedral images."""
        return min(transform(self.cells, s) for s in range(len(SYMMETRIES)))

    def symmetry_to(self, other: 'Polyomino'):
        """Index s with self.image(s) == other, or None."""
        for s in range(len(SYMMETRIES)):
            if transform(self.cells, s) == other.cells:
                return s
        return None

    def columns(self) -> List[int]:
        """Cell count of each column, left to right."""
        counts = [0] * self.width
        for _, c in self.cells:
            counts[c] += 1
        return counts

    def render(self, on: str = 'C', off: str = 'D') -> List[str]:
        cell_set = self.cell_set
        return [''.join(on if (r, c) in cell_set else off for c in range(self.width))
                for r in range(self.height)]

    def __repr__(self):
        return f'<Polyomino size={self.size} {self.height}x{self.width}>'


def _connected(cells) -> bool:
    cell_set = set(cells)
    start = next(iter(cell_set))
    seen = {start}
    queue = deque([start])
    while queue:
        r, c = queue.popleft()
        for dr, dc in STEPS:
            nxt = (r + dr, c + dc)
            if nxt in cell_set and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == len(cell_set)


def enumerate_fixed_polyominoes(k: int) -> List[Polyomino]:
    """All fixed polyominoes with k cells, sorted by encoding.

    Raises:
        InvalidParams: If k < 1 or k > MAX_ORDER.
    """
    if not 1 <= k <= MAX_ORDER:
        raise InvalidParams(f'Polyomino order must be in 1..{MAX_ORDER}, got {k}')
    level = {((0, 0),)}
    for _ in range(k - 1):
        grown = set()
        for cells in level:
            cell_set = set(cells)
            for r, c in cells:
                for dr, dc in STEPS:
                    nxt = (r + dr, c + dc)
                    if nxt not in cell_set:
                        grown.add(normalize(cell_set | {nxt}))
        level = grown
    return [Polyomino(cells) for cells in sorted(level)]


def is_convex(poly: Polyomino) -> bool:
    """True iff path distance inside the cells equals Manhattan distance for all pairs."""
    cell_set = poly.cell_set
    for source in poly.cells:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            r, c = queue.popleft()
            for dr, dc in STEPS:
                nxt = (r + dr, c + dc)
                if nxt in cell_set and nxt not in dist:
                    dist[nxt] = dist[(r, c)] + 1
                    queue.append(nxt)
        sr, sc = source
        for (r, c), d in dist.items():
            if d != abs(r - sr) + abs(c - sc):
                return False
    return True
