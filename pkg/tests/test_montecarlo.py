# tests/test_montecarlo.py
"""Tests for random initialisation, sweeps, theory curves and containment."""

import importlib
import io
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import chisquare

from pdgrid.clusters import SeedSpecies, clusters_of, embed, enumerate_fixed_polyominoes
from pdgrid.core import CheatAdvantage, Configuration, Strategy, Topology
from pdgrid.engine import EngineLimits, run_to_termination
from pdgrid.errors import DepthExceeded, InvalidParams, ScheduleError
from pdgrid.montecarlo import (
    CSV_HEADER, PRESETS, RunRecord, SweepSpec, TheoryCurve, cluster_census,
    containment_experiment, defector_growth_box, derive_seed, dynamics_rng,
    expected_cluster_count, perimeter, preset_spec, random_config, read_sweep_csv, run_trial,
    summarize, sweep, theory_curve, within_box, write_sweep_csv,
)
sweep_module = importlib.import_module('pdgrid.montecarlo.sweep')

C, D = Strategy.COOPERATE, Strategy.DEFECT


@pytest.fixture
def cheat():
    """Default cheating advantage."""
    return CheatAdvantage()


def csv_text(records):
    stream = io.StringIO()
    write_sweep_csv(records, stream)
    return stream.getvalue()


def run_sweep(topology, n, p_values, replicates, seed=20240101, threads=4, max_rounds=10000):
    spec = SweepSpec(topology, n, tuple(p_values), replicates, seed,
                     limits=EngineLimits(max_rounds=max_rounds))
    return sweep(spec, threads)


class TestSampling:
    """Test seeds, random configurations and the cluster census."""

    def test_derive_seed(self):
        """Test that trial seeds are reproducible and distinct."""
        assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
        seeds = {derive_seed(1, i, rep) for i in range(5) for rep in range(5)}
        assert len(seeds) == 25
        assert all(0 <= s < 2 ** 64 for s in seeds)

    def test_random_config_reproducible(self):
        """Test that equal seeds give equal configurations."""
        topology = Topology.torus(30)
        assert random_config(topology, 0.4, 9) == random_config(topology, 0.4, 9)
        assert random_config(topology, 0.4, 9) != random_config(topology, 0.4, 10)

    def test_random_config_density(self):
        """Test that the cooperator count is within four standard deviations of np."""
        config = random_config(Topology.torus(100), 0.5, 123)
        assert abs(config.cooperator_count() - 5000) <= 4 * 50

    @pytest.mark.parametrize('p', [0, 1, -0.1, 1.5])
    def test_probability_checked(self, p):
        """Test that p must lie strictly inside (0, 1)."""
        with pytest.raises(InvalidParams):
            random_config(Topology.cycle(10), p, 1)

    def test_windows_refused(self):
        """Test that random configurations need a cycle or torus."""
        with pytest.raises(InvalidParams):
            random_config(Topology.window(5, 5), 0.5, 1)

    def test_perimeter(self):
        """Test shape perimeters."""
        assert perimeter(((0, 0),)) == 4
        assert perimeter(SeedSpecies.LINE3.cells) == 8
        assert perimeter(SeedSpecies.CORNER3.cells) == 7

    def test_census_small(self):
        """Test the census of a hand-made torus."""
        arr = np.zeros(25, dtype=np.uint8)
        arr[[0, 1, 13]] = 1
        census = cluster_census(Configuration(Topology.torus(5), arr))
        assert census == {((0, 0), (0, 1)): 1, ((0, 0),): 1}

    def test_census_matches_expectation(self):
        """Test small-cluster counts against n^2 p^k (1-p)^c."""
        n, p = 500, 0.02
        census = cluster_census(random_config(Topology.torus(n), p, 77), max_size=3)
        for k in (2, 3):
            shapes = enumerate_fixed_polyominoes(k)
            expected = sum(expected_cluster_count(s.cells, n, p) for s in shapes)
            found = sum(census.get(s.cells, 0) for s in shapes)
            assert abs(found - expected) <= 4 * math.sqrt(expected)


class TestTheory:
    """Test closed-form curves."""

    def test_values(self):
        """Test curve values at reference points."""
        assert theory_curve(TheoryCurve.TORUS_SMALL, 0.05) == pytest.approx(2.5e-3)
        assert theory_curve('TorusLarge', 0.98) == pytest.approx(0.96)
        assert theory_curve('TorusFloor', 0.5) == pytest.approx(0.5 ** 13)
        assert theory_curve('CycleLowerAAS', 0.5) == pytest.approx(3 / 128)

    def test_small_upper_uses_natural_log(self):
        """Test the n-dependent upper curve."""
        expected = 20 * 0.01 ** 3 + 38 * math.log(100) ** 4 * 0.01 ** 4
        assert theory_curve('TorusSmallUpper', 0.01, 100) == pytest.approx(expected)
        with pytest.raises(InvalidParams):
            theory_curve('TorusSmallUpper', 0.01, 1)

    def test_cycle_bounds_ordered(self):
        """Test that the cycle lower bound never exceeds the upper bound."""
        for i in range(1, 100):
            p = i / 100
            assert theory_curve('CycleLowerE', p) <= theory_curve('CycleUpperE', p)

    def test_invalid(self):
        """Test unknown names and p outside (0, 1)."""
        with pytest.raises(InvalidParams):
            theory_curve('Quartic', 0.5)
        with pytest.raises(InvalidParams):
            theory_curve('TorusSmall', 1.0)


class TestSweepSpec:
    """Test sweep specifications and presets."""

    @pytest.mark.parametrize('kwargs', [
        {'topology': 'window'},
        {'replicates': 0},
        {'p_values': ()},
        {'p_values': (0.5, 1.0)},
    ])
    def test_validation(self, kwargs):
        """Test that invalid sweeps are rejected."""
        args = {'topology': 'torus', 'n': 10, 'p_values': (0.5,), 'replicates': 1,
                'master_seed': 1}
        args.update(kwargs)
        with pytest.raises(InvalidParams):
            SweepSpec(**args)

    def test_presets(self):
        """Test the preset p grids."""
        spec = preset_spec('torus-small', 100, 2, 1)
        assert spec.p_values[0] == 0.001 and spec.p_values[-1] == 0.07
        assert len(spec.p_values) == 70
        assert PRESETS['torus-large'][1][0] == 0.92
        assert preset_spec('cycle', 1000, 1, 1).topology == 'cycle'
        with pytest.raises(InvalidParams):
            preset_spec('torus-huge', 100, 1, 1)


class TestSweep:
    """Test sweeps, summaries and the CSV format."""

    def test_thread_count_does_not_change_output(self):
        """Test byte-identical CSV for any number of threads."""
        outputs = {csv_text(run_sweep('torus', 20, (0.3, 0.6), 3, threads=t).records)
                   for t in (1, 2, 5)}
        assert len(outputs) == 1

    def test_record_order_and_header(self):
        """Test CSV layout."""
        result = run_sweep('cycle', 60, (0.2, 0.8), 2)
        lines = csv_text(result.records).split('\n')
        assert lines[0] == ','.join(CSV_HEADER)
        assert [(r.p, r.rep) for r in result.records] == [(0.2, 0), (0.2, 1), (0.8, 0), (0.8, 1)]
        assert lines[-1] == ''

    def test_repeated_p_values_keep_task_order(self):
        """Test that records follow the p list even when a value repeats."""
        result = run_sweep('cycle', 40, (0.5, 0.2, 0.5), 2, seed=7)
        assert [(r.p, r.rep) for r in result.records] == [
            (0.5, 0), (0.5, 1), (0.2, 0), (0.2, 1), (0.5, 0), (0.5, 1),
        ]
        expected = [derive_seed(7, i, rep) for i in range(3) for rep in range(2)]
        assert [r.seed for r in result.records] == expected

    def test_run_trial_seeds(self):
        """Test that trials use the derived seed."""
        spec = SweepSpec('torus', 15, (0.5,), 1, 42)
        record = run_trial(spec, 0, 0)
        assert record.seed == derive_seed(42, 0, 0)
        config = random_config(Topology.torus(15), 0.5, record.seed)
        result = run_to_termination(config, dynamics_rng(record.seed), spec.cheat)
        assert record.r_f == result.final_density

    def test_engine_errors_become_statuses(self, monkeypatch):
        """Test that engine errors are recorded rather than raised."""
        def fail(*args, **kwargs):
            raise DepthExceeded('too deep')

        monkeypatch.setattr(sweep_module, 'run_to_termination', fail)
        record = run_trial(SweepSpec('torus', 10, (0.5,), 1, 1), 0, 0)
        assert record.status == 'error:DepthExceeded'
        assert record.r_f is None
        assert record.to_row()[4] == ''

    def test_summarize(self):
        """Test that means cover stable trials only."""
        records = [
            RunRecord(0.5, 10, 0, 1, Fraction(1, 2), 3, 'stable'),
            RunRecord(0.5, 10, 1, 2, Fraction(1, 4), 4, 'stable'),
            RunRecord(0.5, 10, 2, 3, Fraction(1, 10), 5, 'max_rounds'),
        ]
        (summary,) = summarize(records)
        assert summary.trials == 3
        assert summary.mean_r_f == pytest.approx(0.375)
        assert summary.std_error == pytest.approx(0.125)
        assert summary.tally == {'stable': 2, 'max_rounds': 1}

    def test_csv_round_trip(self):
        """Test reading back written records."""
        records = [
            RunRecord(0.25, 10, 0, 11, Fraction(1, 2), 3, 'stable'),
            RunRecord(0.25, 10, 1, 12, None, 0, 'error:UnresolvedTie'),
        ]
        assert read_sweep_csv(io.StringIO(csv_text(records))) == records

    @pytest.mark.parametrize('text', [
        '',
        'p,n,rep\n0.5,10,0\n',
        ','.join(CSV_HEADER) + '\n0.5,10,0\n',
        ','.join(CSV_HEADER) + '\n0.5,ten,0,1,0.5,3,stable\n',
    ])
    def test_csv_schema_errors(self, text):
        """Test that malformed CSV is rejected."""
        with pytest.raises(ScheduleError):
            read_sweep_csv(io.StringIO(text))


class TestContainment:
    """Test the cluster containment experiment."""

    @pytest.mark.parametrize('species', [SeedSpecies.HAT4, SeedSpecies.LINE3])
    def test_settling_species_never_escape(self, species, cheat):
        """Test that clusters settling into a plus stay in the ball."""
        result = containment_experiment(species, 1, 20, 5, cheat)
        assert result.radius == 6
        assert result.escapes == 0
        assert result.escape_fraction == 0

    def test_validation(self, cheat):
        """Test that defector seeds and negative i are rejected."""
        with pytest.raises(InvalidParams):
            containment_experiment(SeedSpecies.DEFECTOR1, 1, 5, 1, cheat)
        with pytest.raises(InvalidParams):
            containment_experiment(SeedSpecies.SQUARE4, -1, 5, 1, cheat)

    def test_growth_box(self):
        """Test the defector growth box helpers."""
        box = defector_growth_box(SeedSpecies.DEFECTOR2.cells, 5)
        assert box == (3, 7, 3, 8)
        topology = Topology.window(13, 13)
        assert within_box([topology.index(3, 3), topology.index(7, 8)], topology, box)
        assert not within_box([topology.index(2, 5)], topology, box)
        assert within_box([], topology, box)

    @pytest.mark.parametrize('k', [1, 2, 3, 4])
    def test_defector_clusters_stay_in_box(self, k, cheat):
        """Test that defector clusters in cooperator fields stay near their seed."""
        margin = 5
        for poly in enumerate_fixed_polyominoes(k):
            box = defector_growth_box(poly.cells, margin)
            for seed in range(3):
                config = embed(poly.cells, C, margin)
                topology = config.topology

                def observer(t, state, trace):
                    defectors = np.flatnonzero(state.strategy_array() == 0).tolist()
                    assert within_box(defectors, topology, box)

                run_to_termination(config, dynamics_rng(seed), cheat, observer=observer)

    @pytest.mark.slow
    @pytest.mark.parametrize('i', [3, 6])
    def test_square4_escape_rate(self, i, cheat):
        """Test that squares rarely leave the ball of radius 2i+4."""
        trials = 500
        result = containment_experiment(SeedSpecies.SQUARE4, i, trials, 2024, cheat)
        bound = (7 / 8) ** (i // 3)
        sigma = math.sqrt(bound * (1 - bound) / trials)
        assert result.escape_fraction <= bound + 3 * sigma


class TestAgainstExact:
    """Test simulated fates against exact absorption."""

    def corner3_fates(self, trials, cheat):
        counts = {0: 0, 5: 0}
        for trial in range(trials):
            config = embed(SeedSpecies.CORNER3.cells, D, 4)
            result = run_to_termination(config, dynamics_rng(derive_seed(3, 0, trial)), cheat)
            counts[result.config.cooperator_count()] += 1
        return [counts[0], counts[5]]

    def test_corner3_fates(self, cheat):
        """Test that a corner dies in about half of the runs."""
        observed = self.corner3_fates(1000, cheat)
        assert chisquare(observed).pvalue > 0.001

    @pytest.mark.slow
    def test_corner3_fates_many(self, cheat):
        """Test corner fates over 10^4 runs."""
        observed = self.corner3_fates(10 ** 4, cheat)
        assert chisquare(observed, [5000, 5000]).pvalue > 0.001


@pytest.mark.slow
class TestAsymptoticRegimes:
    """Test sweep means against the limiting densities."""

    def test_torus_small_p(self):
        """Test r_f close to 20 p^3 for small p."""
        # At p = 0.02 a run ends with about 8 stable clusters, so 10 replicates put the
        # 20% band near 1.6 standard errors of the mean; 30 replicates put it near 2.8.
        result = run_sweep('torus', 500, (0.02, 0.03, 0.04, 0.05), 30)
        for summary in result.summaries:
            target = theory_curve('TorusSmall', summary.p)
            assert summary.mean_r_f == pytest.approx(target, rel=0.2)

    def test_torus_large_p(self):
        """Test r_f close to 2p - 1 for p near one."""
        result = run_sweep('torus', 500, (0.97, 0.98, 0.99), 10)
        for summary in result.summaries:
            assert abs(summary.mean_r_f - theory_curve('TorusLarge', summary.p)) <= 0.01

    def test_torus_tiny_p(self):
        """Test that runs at p = 0.002 without a three-cell cluster end without cooperators."""
        # Only C -> D flips happen while every cooperator cluster has at most two cells,
        # so those runs always die out. A three-cell cluster shows up in about 1.2% of
        # runs (n^2 * 6 * p^3) and survives in about two thirds of those.
        result = run_sweep('torus', 500, (0.002,), 10)
        seeded = 0
        for record in result.records:
            config = random_config(Topology.torus(500), 0.002, record.seed)
            if max(len(c) for c in clusters_of(config, C)) >= 3:
                seeded += 1
                continue
            assert record.r_f == 0
        assert seeded <= 1

    def test_cycle_bounds(self):
        """Test cycle runs against the per-run and mean bounds."""
        p_values = tuple(i / 10 for i in range(1, 10))
        result = run_sweep('cycle', 10 ** 5, p_values, 10)
        assert all(r.is_stable for r in result.records)
        for record in result.records:
            assert theory_curve('CycleLowerAAS', record.p) <= record.r_f <= record.p
        for summary in result.summaries:
            assert theory_curve('CycleLowerE', summary.p) - 0.02 <= summary.mean_r_f
            assert summary.mean_r_f <= theory_curve('CycleUpperE', summary.p) + 0.02

    def test_density_floor(self, cheat):
        """Test that the density never falls below p^13."""
        floor = theory_curve('TorusFloor', 0.5)
        for rep in range(20):
            seed = derive_seed(13, 0, rep)
            lowest = []
            config = random_config(Topology.torus(200), 0.5, seed)
            run_to_termination(config, dynamics_rng(seed), cheat,
                               observer=lambda t, state, trace: lowest.append(state.density()))
            assert min(lowest) >= floor
