# pdgrid/cli/verify.py
"""Verification suites run by the `verify` command."""

import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

from pdgrid.clusters import (
    ADJACENT_EVEN, BASIC_KINDS, DFamilyKind, SeedSpecies, classify, embed,
    enumerate_fixed_polyominoes, generate, is_convex, sample_kinds,
)
from pdgrid.core import CheatAdvantage, Strategy, Topology, weak_set
from pdgrid.engine import EngineLimits, run_to_termination, successor_counts
from pdgrid.errors import InvalidParams
from pdgrid.exact import (
    OutcomeClass, absorption, basic_step_distribution, clusterbound_limit,
    clusterbound_series, verify_stable_time,
)
from pdgrid.montecarlo import (
    SweepSpec, TheoryCurve, dynamics_rng, random_config, sweep, theory_curve, write_sweep_csv,
)

logger = logging.getLogger(__name__)

POLYOMINO_COUNTS = {1: 1, 2: 2, 3: 6, 4: 19, 5: 63}
SUITES = ('exact', 'clusters', 'montecarlo', 'all')


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ''

    def line(self) -> str:
        mark = '✓' if self.passed else '✗'
        return f'{mark} {self.name}' + (f': {self.detail}' if self.detail else '')


def _check(name: str, passed: bool, detail: str = '') -> CheckResult:
    if not passed:
        logger.warning(f'Verification failed: {name} {detail}')
    return CheckResult(name, bool(passed), detail)


def _fates(species: SeedSpecies, cheat) -> Dict[OutcomeClass, Fraction]:
    return absorption(species, 4, cheat).fates


def exact_suite(cheat: CheatAdvantage, threads: int = 1, max_side: int = 8) -> List[CheckResult]:
    five = OutcomeClass.stable_cells(5)
    half = Fraction(1, 2)
    results = [
        _check('line3 stabilises to a 5-cluster', _fates(SeedSpecies.LINE3, cheat) == {five: 1}),
        _check('corner3 splits empty/5-cluster evenly',
               _fates(SeedSpecies.CORNER3, cheat) == {OutcomeClass.empty(): half, five: half}),
        _check('hat4 stabilises to a 5-cluster', _fates(SeedSpecies.HAT4, cheat) == {five: 1}),
    ]

    partials = [clusterbound_series(j) for j in (1, 10, 100, 1000)]
    monotone = all(a < b for a, b in zip(partials, partials[1:]))
    limit = clusterbound_limit()
    results.append(_check('cluster bound series below 8919',
                          monotone and partials[-1] < limit < 8919, f'limit={limit}'))

    kind = DFamilyKind(ADJACENT_EVEN, 8, 6)
    dist = basic_step_distribution(embed(generate(kind).cells, Strategy.DEFECT, 3), cheat)
    expected = {'stable(9,7)': Fraction(1, 4), 'adjacent-even(9,6)': Fraction(1, 4),
                'adj-transit-c(9,7,3)': half}
    results.append(_check(f'{kind.label()} basic step', dist.labels() == expected,
                          ', '.join(f'{k}={m}' for k, m in sorted(dist.items()))))

    config = embed(SeedSpecies.SQUARE4.cells, Strategy.DEFECT, 3)
    results.append(_check('memo and full enumeration agree',
                          successor_counts(config, cheat, 'memo')
                          == successor_counts(config, cheat, 'full')))

    minimum = verify_stable_time(sample_kinds(max_side), cheat, threads)
    results.append(_check(f'three-step stabilisation >= 1/8 (w, h <= {max_side})',
                          minimum >= Fraction(1, 8), f'min={minimum}'))
    return results


def clusters_suite(cheat: CheatAdvantage, threads: int = 1, max_side: int = 8) -> List[CheckResult]:
    results = []
    for k, expected in POLYOMINO_COUNTS.items():
        found = len(enumerate_fixed_polyominoes(k))
        results.append(_check(f'{k}-ominoes', found == expected, f'{found}'))

    bad = []
    for kind in sample_kinds(max_side):
        try:
            shape = generate(kind)
        except InvalidParams as e:
            bad.append(f'{kind.label()} not built: {e}')
            continue
        config = embed(shape.cells, Strategy.DEFECT, 3)
        weak = len(weak_set(config, cheat))
        if weak != kind.expected_weak or not is_convex(shape):
            bad.append(f'{kind.label()} weak={weak}')
            continue
        # shapes of four cells or fewer are reported as seed species
        if shape.size <= 4:
            continue
        found = classify(shape.cells)
        if found is None:
            bad.append(f'{kind.label()} not classified')
        elif kind.kind in BASIC_KINDS and found.kind != kind:
            bad.append(f'{kind.label()} classified as {found.label()}')
        elif generate(found.kind).image(found.symmetry) != shape:
            bad.append(f'{kind.label()} classified as {found.label()}')
    results.append(_check('kinds have their weak counts, are convex and classify back',
                          not bad, '; '.join(bad[:5])))
    return results


def montecarlo_suite(cheat: CheatAdvantage, threads: int = 2,
                     max_side: int = 8) -> List[CheckResult]:
    spec = SweepSpec('torus', 30, (0.2, 0.5, 0.8), 2, 7, cheat, EngineLimits(max_rounds=2000))
    outputs = []
    for count in (1, max(2, threads)):
        stream = io.StringIO()
        write_sweep_csv(sweep(spec, count).records, stream)
        outputs.append(stream.getvalue())
    results = [_check('sweep output independent of threads', outputs[0] == outputs[1])]

    floor = 0.5 ** 13
    lowest = []

    def observer(_round, state, _trace):
        lowest.append(float(state.density()))

    config = random_config(Topology.torus(40), 0.5, 11)
    run_to_termination(config, dynamics_rng(11), cheat, EngineLimits(max_rounds=2000),
                       observer=observer)
    results.append(_check('density stays above p^13', min(lowest) >= floor,
                          f'min={min(lowest):.6g}'))

    ordered = all(theory_curve(TheoryCurve.CYCLE_LOWER_E, p / 100)
                  <= theory_curve(TheoryCurve.CYCLE_UPPER_E, p / 100) for p in range(1, 100))
    results.append(_check('cycle bounds ordered', ordered))
    return results


SUITE_RUNNERS: Dict[str, Callable[..., List[CheckResult]]] = {
    'exact': exact_suite,
    'clusters': clusters_suite,
    'montecarlo': montecarlo_suite,
}


def run_suite(name: str, cheat: CheatAdvantage, threads: int = 1,
              max_side: int = 8) -> List[CheckResult]:
    if name not in SUITES:
        raise InvalidParams(f'Unknown suite {name!r}; choose from {SUITES}')
    names = ('clusters', 'exact', 'montecarlo') if name == 'all' else (name,)
    results = []
    for suite in names:
        logger.info(f'Running {suite} suite')
        results.extend(SUITE_RUNNERS[suite](cheat, threads, max_side))
    return results
