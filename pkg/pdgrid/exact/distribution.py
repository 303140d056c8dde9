# pdgrid/exact/distribution.py
"""Exact probability distributions over configurations and outcome classes."""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterator, List, Tuple

from pdgrid.clusters.atlas import KIND_ORDER, DFamilyKind, SeedSpecies
from pdgrid.clusters.classify import classify
from pdgrid.clusters.embedding import clusters_of, vertex_cells, window_cells
from pdgrid.clusters.polyomino import SYMMETRIES, transform
from pdgrid.core.configuration import Configuration, weak_set
from pdgrid.core.strategy import CheatAdvantage
from pdgrid.errors import InvalidParams

EMPTY = 'empty'
STABLE_CELLS = 'stable-cells'
SPECIES = 'species'
KIND = 'kind'
UNCLASSIFIED = 'unclassified'


@dataclass(frozen=True, order=True)
class OutcomeClass:
    """Window configuration class up to translation, rotation and reflection.

    Ordering follows (category, detail), which is the encoding transitions
    are sorted by.
    """

    category: str
    detail: tuple = ()

    @classmethod
    def empty(cls) -> 'OutcomeClass':
        return cls(EMPTY)

    @classmethod
    def stable_cells(cls, count: int) -> 'OutcomeClass':
        return cls(STABLE_CELLS, (count,))

    @classmethod
    def of_kind(cls, kind) -> 'OutcomeClass':
        if isinstance(kind, SeedSpecies):
            return cls(SPECIES, (kind.value,))
        return cls(KIND, (KIND_ORDER.index(kind.kind), kind.w, kind.h, kind.ell))

    @property
    def kind(self):
        """The classified kind, or None for other categories."""
        if self.category == SPECIES:
            return SeedSpecies(self.detail[0])
        if self.category == KIND:
            index, w, h, ell = self.detail
            return DFamilyKind(KIND_ORDER[index], w, h, ell)
        return None

    @property
    def is_absorbing(self) -> bool:
        return self.category in (EMPTY, STABLE_CELLS)

    @property
    def label(self) -> str:
        if self.category == EMPTY:
            return EMPTY
        if self.category == STABLE_CELLS:
            return f'{STABLE_CELLS}({self.detail[0]})'
        if self.category == UNCLASSIFIED:
            cells = ';'.join(f'{r},{c}' for r, c in self.detail)
            return f'{UNCLASSIFIED}({cells})'
        kind = self.kind
        return kind.value if isinstance(kind, SeedSpecies) else kind.label()

    def __str__(self):
        return self.label


def canonical_cells(cells) -> Tuple[Tuple[int, int], ...]:
    """Smallest encoding of a cell set, not necessarily connected, over all symmetries."""
    return min(transform(cells, s) for s in range(len(SYMMETRIES)))


def classify_outcome(config: Configuration, cheat: CheatAdvantage) -> OutcomeClass:
    """Outcome class of a window configuration.

    A single recognised cluster is reported by kind; otherwise stable
    configurations are reported by their number of non-field cells and the
    rest as unclassified.
    """
    vertices = config.non_field_vertices()
    if not vertices:
        return OutcomeClass.empty()
    components = clusters_of(config, config.field.opposite())
    if len(components) == 1:
        found = classify(vertex_cells(config, components[0]))
        if found is not None:
            return OutcomeClass.of_kind(found.kind)
    if not weak_set(config, cheat):
        return OutcomeClass.stable_cells(len(vertices))
    return OutcomeClass(UNCLASSIFIED, canonical_cells(window_cells(config)))


class TransitionDistribution:
    """Finite distribution with exact rational masses."""

    def __init__(self, outcomes: Dict[Hashable, Fraction]):
        merged = defaultdict(Fraction)
        for key, mass in outcomes.items():
            merged[key] += Fraction(mass)
        self.outcomes = {key: mass for key, mass in merged.items() if mass != 0}

    @classmethod
    def point(cls, key) -> 'TransitionDistribution':
        return cls({key: Fraction(1)})

    @property
    def total(self) -> Fraction:
        return sum(self.outcomes.values(), Fraction(0))

    def check(self):
        """Raise unless the masses are positive and sum to exactly one."""
        if any(mass <= 0 for mass in self.outcomes.values()):
            raise InvalidParams('Distribution has a non-positive mass')
        if self.total != 1:
            raise InvalidParams(f'Distribution sums to {self.total}, not 1')

    def map(self, fn: Callable[[Hashable], Hashable]) -> 'TransitionDistribution':
        """Push the distribution forward through fn, merging equal images."""
        merged = defaultdict(Fraction)
        for key, mass in self.outcomes.items():
            merged[fn(key)] += mass
        return TransitionDistribution(merged)

    def get(self, key, default=Fraction(0)) -> Fraction:
        return self.outcomes.get(key, default)

    def items(self) -> Iterator:
        return iter(self.outcomes.items())

    def labels(self) -> Dict[str, Fraction]:
        return {str(key): mass for key, mass in self.outcomes.items()}

    def __len__(self):
        return len(self.outcomes)

    def __contains__(self, key):
        return key in self.outcomes

    def __eq__(self, other):
        return isinstance(other, TransitionDistribution) and other.outcomes == self.outcomes

    def __repr__(self):
        body = ', '.join(f'{key}: {mass}' for key, mass in self.outcomes.items())
        return f'<TransitionDistribution {{{body}}}>'


def format_transitions(dist: TransitionDistribution) -> List[str]:
    """Lines `<class>\\t<num>/<den>` sorted by class encoding."""
    lines = []
    for key in sorted(dist.outcomes):
        mass = dist.outcomes[key]
        lines.append(f'{key}\t{mass.numerator}/{mass.denominator}')
    return lines
