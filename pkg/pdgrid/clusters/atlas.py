# pdgrid/clusters/atlas.py
"""Seed cluster species and the eight parametrised cluster kinds.

The four skew-rectangular kinds are built column by column, left to right,
each column given as (top row, height) with rows growing downward. Transit
kinds are grown from a skew rectangle by converting weak defectors in a
defector field; `ell` counts the converted cells.

DoubleEvenTransit and AdjTransitC share one construction: a layer along the
long side of OppositeEven(w, h), started at its top pair. The short layers
(ell < h/2) are DoubleEvenTransit(w, h, ell); the longer ones are labelled
AdjTransitC(w, h + 1, ell). AdjacentEven(w - 1, h) reaches AdjTransitC(w, h + 1, h/2)
in one basic step.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Tuple, Union

from pdgrid.clusters.embedding import embed, reembed, window_cells
from pdgrid.clusters.polyomino import Cell, Polyomino, normalize
from pdgrid.core.configuration import Configuration, weak_set
from pdgrid.core.strategy import CheatAdvantage, Strategy
from pdgrid.errors import InvalidParams

logger = logging.getLogger(__name__)

GROWTH_MARGIN = 4


class SeedSpecies(Enum):
    """Named small clusters."""

    LINE3 = 'line3'
    CORNER3 = 'corner3'
    LINE4 = 'line4'
    CORNER4 = 'corner4'
    HAT4 = 'hat4'
    TURN4 = 'turn4'
    SQUARE4 = 'square4'
    DEFECTOR1 = 'defector1'
    DEFECTOR2 = 'defector2'

    @property
    def cells(self) -> Tuple[Cell, ...]:
        return normalize(SPECIES_CELLS[self])

    @property
    def field(self) -> Strategy:
        """Strategy of the surrounding field; the cluster holds the other one."""
        if self in (SeedSpecies.DEFECTOR1, SeedSpecies.DEFECTOR2):
            return Strategy.COOPERATE
        return Strategy.DEFECT

    @property
    def is_four_cluster(self) -> bool:
        return len(SPECIES_CELLS[self]) == 4


SPECIES_CELLS = {
    SeedSpecies.LINE3: ((0, 0), (0, 1), (0, 2)),
    SeedSpecies.CORNER3: ((0, 0), (1, 0), (1, 1)),
    SeedSpecies.LINE4: ((0, 0), (0, 1), (0, 2), (0, 3)),
    SeedSpecies.CORNER4: ((0, 0), (1, 0), (2, 0), (2, 1)),
    SeedSpecies.HAT4: ((0, 0), (0, 1), (0, 2), (1, 1)),
    SeedSpecies.TURN4: ((0, 1), (0, 2), (1, 0), (1, 1)),
    SeedSpecies.SQUARE4: ((0, 0), (0, 1), (1, 0), (1, 1)),
    SeedSpecies.DEFECTOR1: ((0, 0),),
    SeedSpecies.DEFECTOR2: ((0, 0), (0, 1)),
}

STABLE = 'stable'
DOUBLY_EVEN = 'doubly-even'
OPPOSITE_EVEN = 'opposite-even'
ADJACENT_EVEN = 'adjacent-even'
DOUBLE_EVEN_TRANSIT = 'double-even-transit'
ADJ_TRANSIT_A = 'adj-transit-a'
ADJ_TRANSIT_B = 'adj-transit-b'
ADJ_TRANSIT_C = 'adj-transit-c'

BASIC_KINDS = (STABLE, DOUBLY_EVEN, OPPOSITE_EVEN, ADJACENT_EVEN)
TRANSIT_KINDS = (DOUBLE_EVEN_TRANSIT, ADJ_TRANSIT_A, ADJ_TRANSIT_B, ADJ_TRANSIT_C)
KIND_ORDER = BASIC_KINDS + TRANSIT_KINDS

# Weak vertices of each kind in a defector field.
EXPECTED_WEAK = {
    STABLE: 0,
    DOUBLY_EVEN: 8,
    OPPOSITE_EVEN: 4,
    ADJACENT_EVEN: 4,
    DOUBLE_EVEN_TRANSIT: 3,
    ADJ_TRANSIT_A: 3,
    ADJ_TRANSIT_B: 3,
    ADJ_TRANSIT_C: 3,
}


@dataclass(frozen=True, order=True)
class DFamilyKind:
    """A parametrised cluster kind; `ell` is 0 for the skew rectangles."""

    kind: str
    w: int
    h: int
    ell: int = 0

    def __post_init__(self):
        problem = _constraint_problem(self)
        if problem:
            raise InvalidParams(f'{self.label()}: {problem}')

    @property
    def is_stable(self) -> bool:
        return self.kind == STABLE

    @property
    def expected_weak(self) -> int:
        return EXPECTED_WEAK[self.kind]

    def label(self) -> str:
        if self.kind in TRANSIT_KINDS:
            return f'{self.kind}({self.w},{self.h},{self.ell})'
        return f'{self.kind}({self.w},{self.h})'


def _constraint_problem(k: DFamilyKind):
    w, h, ell = k.w, k.h, k.ell
    if k.kind not in KIND_ORDER:
        return 'unknown kind'
    if k.kind == STABLE:
        if h < 3 or h % 2 == 0 or w < h:
            return 'needs h odd, h >= 3, w >= h'
    elif k.kind == DOUBLY_EVEN:
        if h < 3 or h % 2 == 0 or w < h - 1:
            return 'needs h odd, h >= 3, w >= h - 1'
    elif k.kind == ADJ_TRANSIT_C:
        if h < 5 or h % 2 == 0 or w < h:
            return 'needs h odd, h >= 5, w >= h'
    elif h < 4 or h % 2 or w < h:
        return 'needs h even, h >= 4, w >= h'
    if k.kind in BASIC_KINDS:
        return None if ell == 0 else 'takes no length'
    low, high = _length_range(k.kind, w, h)
    if not low <= ell <= high:
        return f'needs {low} <= ell <= {high}'
    return None


def _length_range(kind: str, w: int, h: int) -> Tuple[int, int]:
    """Converted cells along the growing side while three vertices stay weak."""
    if kind == ADJ_TRANSIT_C:
        # the long layer of OppositeEven(w, h - 1) past where the short one ends
        return (h - 1) // 2, w - (h + 1) // 2
    if kind == ADJ_TRANSIT_A:
        # stops two cells short of the far weak pair
        return 1, w - h // 2 - 1
    return 1, h // 2 - 1


ClusterKind = Union[DFamilyKind, SeedSpecies]


def _cells_from_columns(columns: List[Tuple[int, int]]) -> Tuple[Cell, ...]:
    return normalize((top + i, col)
                     for col, (top, height) in enumerate(columns)
                     for i in range(height))


def _taper(columns, top, height, last):
    """Centred columns shrinking by 2 down to height `last`."""
    while height > last:
        top += 1
        height -= 2
        columns.append((top, height))


def _stable(w, h):
    columns, top, height = [], 0, 1
    while height < h:
        columns.append((top, height))
        top, height = top - 1, height + 2
    columns.append((top, h))
    for _ in range(w - h):
        top += 1
        columns.append((top, h))
    _taper(columns, top, h, 1)
    return columns


def _doubly_even(w, h):
    columns, top, height = [], 0, 2
    while height < h - 1:
        columns.append((top, height))
        top, height = top - 1, height + 2
    columns.append((top, h - 1))
    if w == h - 1:
        columns.append((top, h - 1))
    else:
        columns.append((top, h))
        for _ in range(w - h):
            top += 1
            columns.append((top, h))
        top += 1
        columns.append((top, h - 1))
    _taper(columns, top, h - 1, 2)
    return columns


def _opposite_even(w, h):
    columns, top, height = [], 0, 1
    while height < h - 1:
        columns.append((top, height))
        top, height = top - 1, height + 2
    columns.append((top, h - 1))
    if w == h:
        columns.append((top, h - 1))
    else:
        columns.append((top, h))
        for _ in range(w - h - 1):
            top += 1
            columns.append((top, h))
        top += 1
        columns.append((top, h - 1))
    _taper(columns, top, h - 1, 1)
    return columns


def _adjacent_even(w, h):
    columns, top, height = [], 0, 2
    while height < h:
        columns.append((top, height))
        top, height = top - 1, height + 2
    columns.append((top, h))
    for _ in range(w - h):
        top += 1
        columns.append((top, h))
    top += 1
    columns.append((top, h - 1))
    _taper(columns, top, h - 1, 1)
    return columns


BUILDERS = {
    STABLE: _stable,
    DOUBLY_EVEN: _doubly_even,
    OPPOSITE_EVEN: _opposite_even,
    ADJACENT_EVEN: _adjacent_even,
}


def _pick(config: Configuration, weak, axis: int, extreme: int, other_axis_max: bool) -> int:
    """Weak vertex on the `extreme` side (0 = min) along axis, then by the other axis."""
    coords = {v: config.topology.coords(v) for v in weak}
    edge = min if extreme == 0 else max
    side = edge(c[axis] for c in coords.values())
    pair = [v for v in weak if coords[v][axis] == side]
    choose = max if other_axis_max else min
    return choose(pair, key=lambda v: coords[v][1 - axis])


def _lonely_weak(config: Configuration, cheat: CheatAdvantage, label: str) -> int:
    """The unique weak vertex with no weak neighbours of a transit cluster."""
    weak = weak_set(config, cheat)
    adjacency = config.topology.interior_adjacency
    lonely = [v for v in weak if not weak.intersection(adjacency[v])]
    if len(weak) != 3 or len(lonely) != 1:
        raise InvalidParams(
            f'{label} does not have three weak vertices with a single isolated one'
        )
    return lonely[0]


def _grow_transit(config: Configuration, steps: int, cheat: CheatAdvantage, label: str):
    for _ in range(steps):
        x = _lonely_weak(config, cheat, label)
        config = reembed(config.with_flips([x]), GROWTH_MARGIN)
    _lonely_weak(config, cheat, label)
    return config


@lru_cache(maxsize=None)
def _generate_kind(kind: DFamilyKind) -> Polyomino:
    if kind.kind in BUILDERS:
        return Polyomino.of(_cells_from_columns(BUILDERS[kind.kind](kind.w, kind.h)))

    cheat = CheatAdvantage()
    if kind.kind in (DOUBLE_EVEN_TRANSIT, ADJ_TRANSIT_C):
        # AdjTransitC(w, h, ell) carries h one above its OppositeEven base
        h = kind.h if kind.kind == DOUBLE_EVEN_TRANSIT else kind.h - 1
        base = embed(generate(DFamilyKind(OPPOSITE_EVEN, kind.w, h)).cells,
                     Strategy.DEFECT, GROWTH_MARGIN)
        weak = weak_set(base, cheat)
        # upper-right of the top pair
        start = base.with_flips([_pick(base, weak, 0, 0, True)])
    else:
        base = embed(generate(DFamilyKind(ADJACENT_EVEN, kind.w, kind.h)).cells,
                     Strategy.DEFECT, GROWTH_MARGIN)
        weak = weak_set(base, cheat)
        # lower (A) or upper (B) of the left pair
        lower = kind.kind == ADJ_TRANSIT_A
        start = base.with_flips([_pick(base, weak, 1, 0, lower)])
    config = _grow_transit(start, kind.ell - 1, cheat, kind.label())
    return Polyomino.of(window_cells(config))


def generate(kind: ClusterKind) -> Polyomino:
    """Cell set of a seed species or a parametrised kind.

    Raises:
        InvalidParams: If the parameters violate the kind's constraints.
    """
    if isinstance(kind, SeedSpecies):
        return Polyomino.of(kind.cells)
    return _generate_kind(kind)


def sample_kinds(max_side: int = 12) -> List[DFamilyKind]:
    """Every valid kind with w, h <= max_side, in a fixed order."""
    kinds = []
    for name in KIND_ORDER:
        for h in range(3, max_side + 1):
            for w in range(h - 1, max_side + 1):
                for ell in range(0, w + 1):
                    try:
                        kinds.append(DFamilyKind(name, w, h, ell))
                    except InvalidParams:
                        continue
    return kinds


def atlas(max_side: int = 9) -> List[Tuple[str, Configuration]]:
    """Sample kinds embedded in defector fields, for documentation dumps."""
    entries = []
    for species in SeedSpecies:
        entries.append((species.value, embed(species.cells, species.field, 2)))
    for kind in sample_kinds(max_side):
        try:
            cells = generate(kind).cells
        except InvalidParams as e:
            logger.warning(f'Skipping {kind.label()}: {e}')
            continue
        entries.append((kind.label(), embed(cells, Strategy.DEFECT, 2)))
    return entries
