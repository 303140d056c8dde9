# pdgrid/exact/absorption.py
"""Exact absorption of seed clusters into stable or empty windows."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from pdgrid.clusters.atlas import DFamilyKind, SeedSpecies, generate
from pdgrid.clusters.embedding import embed, window_cells
from pdgrid.core.configuration import Configuration, weak_set
from pdgrid.core.strategy import CheatAdvantage, Strategy
from pdgrid.engine.forced import DEFAULT_THRESHOLD
from pdgrid.errors import InvalidParams
from pdgrid.exact.distribution import OutcomeClass
from pdgrid.exact.series import live_cluster_bound
from pdgrid.exact.transitions import (
    DEFAULT_MAX_FORCED_DEPTH, REEMBED_MARGIN, basic_step_branches,
)

logger = logging.getLogger(__name__)

Seed = Union[SeedSpecies, DFamilyKind, Configuration]


@dataclass(frozen=True)
class StepMass:
    """Cumulative absorbed masses after a number of basic steps."""

    step: int
    mass_stable: Fraction
    mass_empty: Fraction
    mass_live: Fraction


@dataclass
class AbsorptionReport:
    label: str
    per_step: List[StepMass] = field(default_factory=list)
    fates: Dict[OutcomeClass, Fraction] = field(default_factory=dict)
    expected_cooperators_upper: Fraction = Fraction(0)

    @property
    def stable_counts(self) -> Dict[int, Fraction]:
        """Absorbed mass by number of non-field cells; the empty window counts as 0."""
        counts = {}
        for cls, mass in self.fates.items():
            size = cls.detail[0] if cls.detail else 0
            counts[size] = counts.get(size, Fraction(0)) + mass
        return dict(sorted(counts.items()))

    @property
    def mass_live(self) -> Fraction:
        return self.per_step[-1].mass_live if self.per_step else Fraction(1)

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'steps': [
                {'step': s.step, 'stable': str(s.mass_stable), 'empty': str(s.mass_empty),
                 'live': str(s.mass_live)}
                for s in self.per_step
            ],
            'fates': {str(cls): str(mass) for cls, mass in sorted(self.fates.items())},
            'expectedCooperatorsUpper': str(self.expected_cooperators_upper),
        }


def seed_configuration(seed: Seed) -> Tuple[str, Configuration]:
    """Window holding the seed cluster in its field."""
    if isinstance(seed, Configuration):
        return 'configuration', seed
    if isinstance(seed, SeedSpecies):
        return seed.value, embed(seed.cells, seed.field, REEMBED_MARGIN)
    if isinstance(seed, DFamilyKind):
        return seed.label(), embed(generate(seed).cells, Strategy.DEFECT, REEMBED_MARGIN)
    raise InvalidParams(f'Cannot seed a window from {seed!r}')


def _radius(config: Configuration) -> int:
    cells = window_cells(config)
    height = max(r for r, _ in cells) + 1
    width = max(c for _, c in cells) + 1
    return height + width - 2


def absorption(seed: Seed, max_basic_steps: int, cheat: Optional[CheatAdvantage] = None,
               max_forced_depth: int = DEFAULT_MAX_FORCED_DEPTH,
               threshold: int = DEFAULT_THRESHOLD, method: str = 'memo') -> AbsorptionReport:
    """Breadth-first exact expansion of the basic-step chain.

    Branches reaching the same class up to symmetry are merged. Expansion
    stops early once no live mass remains.

    Raises:
        ThresholdExceeded: If any branch meets a round with too many weak vertices.
        DepthExceeded: If forced rounds do not end on some branch.
    """
    if max_basic_steps < 1:
        raise InvalidParams(f'max_basic_steps must be at least 1, got {max_basic_steps}')
    cheat = cheat or CheatAdvantage()
    label, start = seed_configuration(seed)
    report = AbsorptionReport(label)
    frontier = {(): (start, Fraction(1))}
    stable, empty = Fraction(0), Fraction(0)

    for step in range(1, max_basic_steps + 1):
        following = {}
        for config, mass in frontier.values():
            branches = basic_step_branches(config, cheat, max_forced_depth, threshold, method)
            for key, (basic, weight) in branches.items():
                reached = mass * weight
                cells = len(basic.non_field_vertices())
                if cells == 0:
                    empty += reached
                    fate = OutcomeClass.empty()
                elif not weak_set(basic, cheat):
                    stable += reached
                    fate = OutcomeClass.stable_cells(cells)
                else:
                    if key in following:
                        rep, total = following[key]
                        following[key] = (rep, total + reached)
                    else:
                        following[key] = (basic, reached)
                    continue
                report.fates[fate] = report.fates.get(fate, Fraction(0)) + reached
        frontier = following
        live = sum((mass for _, mass in frontier.values()), Fraction(0))
        report.per_step.append(StepMass(step, stable, empty, live))
        logger.debug(f'{label}: step {step} stable={stable} empty={empty} '
                     f'live={live} classes={len(frontier)}')
        if not frontier:
            break

    upper = sum((size * mass for size, mass in report.stable_counts.items()), Fraction(0))
    for config, mass in frontier.values():
        upper += mass * live_cluster_bound(_radius(config))
    report.expected_cooperators_upper = upper
    return report


def stabilisation_probability(kind: Seed, steps: int = 3,
                              cheat: Optional[CheatAdvantage] = None,
                              threshold: int = DEFAULT_THRESHOLD) -> Fraction:
    """Exact probability that the chain is absorbed within `steps` basic steps."""
    return 1 - absorption(kind, steps, cheat, threshold=threshold).mass_live


def stable_time_table(kinds: Iterable[DFamilyKind], cheat: Optional[CheatAdvantage] = None,
                      threads: int = 1,
                      threshold: int = DEFAULT_THRESHOLD) -> Dict[DFamilyKind, Fraction]:
    """Three-step absorption probability of every non-stable kind."""
    kinds = [k for k in kinds if not k.is_stable]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        probabilities = list(pool.map(
            lambda k: stabilisation_probability(k, 3, cheat, threshold), kinds))
    return dict(zip(kinds, probabilities))


def verify_stable_time(kinds: Iterable[DFamilyKind], cheat: Optional[CheatAdvantage] = None,
                       threads: int = 1) -> Fraction:
    """Smallest three-step absorption probability over the non-stable kinds.

    Stable kinds are skipped. Returns 1 when nothing is left to check.
    """
    table = stable_time_table(kinds, cheat, threads)
    for kind, probability in table.items():
        logger.debug(f'{kind.label()}: P(absorbed within 3 steps) = {probability}')
    return min(table.values(), default=Fraction(1))
