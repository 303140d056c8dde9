# tests/test_cli.py
"""Tests for the command-line interface."""

from fractions import Fraction

import pytest
import simplejson as json

from pdgrid import create_app
from pdgrid.cli import dispatch
from pdgrid.cli.verify import exact_suite
from pdgrid.core import CheatAdvantage


@pytest.fixture
def app():
    """Create application for testing."""
    app = create_app('testing')
    with app.app_context():
        yield app


@pytest.fixture
def runner(app):
    """CLI runner bound to the test app."""
    return app.test_cli_runner()


def masses(output):
    lines = [line.split('\t') for line in output.splitlines() if line]
    return {label: Fraction(mass) for label, mass in lines}


class TestPolyominoes:
    """Test the polyominoes command."""

    def test_counts(self, runner):
        """Test fixed polyomino counts up to order 5."""
        result = runner.invoke(args=['polyominoes', '--k', '5'])
        assert result.exit_code == 0
        assert result.stdout.splitlines() == ['1\t1', '2\t2', '3\t6', '4\t19', '5\t63']

    def test_shapes(self, runner):
        """Test drawing the order-2 shapes."""
        result = runner.invoke(args=['polyominoes', '--k', '2', '--shapes'])
        assert result.exit_code == 0
        assert '##' in result.stdout.splitlines()

    def test_order_range(self, runner):
        """Test that k outside 1..8 is a usage error."""
        assert runner.invoke(args=['polyominoes', '--k', '9']).exit_code == 2


class TestSimulate:
    """Test the simulate command."""

    ARGS = ['simulate', '--topology', 'torus', '--size', '30', '--p', '0.5', '--seed', '42']

    def test_trajectory_and_summary(self, runner):
        """Test that each round prints a JSON line followed by the summary."""
        result = runner.invoke(args=self.ARGS)
        assert result.exit_code == 0
        lines = [json.loads(line) for line in result.stdout.splitlines()]
        summary = lines[-1]
        assert summary['status'] == 'stable'
        assert summary['seed'] == 42
        assert len(lines) == summary['rounds'] + 1
        exact = Fraction(summary['finalDensityExact'])
        assert summary['finalDensity'] == pytest.approx(float(exact))

    def test_reproducible(self, runner):
        """Test that equal seeds print identical output."""
        first = runner.invoke(args=self.ARGS)
        assert runner.invoke(args=self.ARGS).stdout == first.stdout

    def test_no_trajectory(self, runner):
        """Test that only the summary is printed without a trajectory."""
        result = runner.invoke(args=self.ARGS + ['--no-trajectory'])
        assert len(result.stdout.splitlines()) == 1

    def test_fixture(self, runner, tmp_path):
        """Test starting from a fixture file."""
        fixture = tmp_path / 'lone.txt'
        fixture.write_text('topology=torus field=-\nCCCCC\nCCCCC\nCCDCC\nCCCCC\nCCCCC\n')
        result = runner.invoke(args=['simulate', '--fixture', str(fixture), '--seed', '1'])
        summary = json.loads(result.stdout.splitlines()[-1])
        assert summary['rounds'] == 1
        assert summary['finalDensityExact'] == '23/25'

    def test_invalid_p(self, runner):
        """Test that p outside (0, 1) fails with exit status 1."""
        result = runner.invoke(args=['simulate', '--size', '10', '--p', '1.5'])
        assert result.exit_code == 1

    def test_unknown_flag(self, runner):
        """Test that unknown flags are usage errors."""
        assert runner.invoke(args=['simulate', '--colour', 'red']).exit_code == 2


class TestTransitions:
    """Test the transitions command."""

    def test_species(self, runner):
        """Test that a 3-line becomes the plus in one basic step."""
        result = runner.invoke(args=['transitions', '--species', 'line3'])
        assert result.exit_code == 0
        assert masses(result.stdout) == {'stable(3,3)': 1}

    def test_adjacent_even(self, runner):
        """Test the three basic-step outcomes of adjacent-even(8, 6)."""
        result = runner.invoke(args=['transitions', '--kind', 'adjacent-even', '--w', '8',
                                     '--h', '6'])
        assert result.exit_code == 0
        assert masses(result.stdout) == {
            'stable(9,7)': Fraction(1, 4),
            'adjacent-even(9,6)': Fraction(1, 4),
            'adj-transit-c(9,7,3)': Fraction(1, 2),
        }

    def test_adjacent_even_round(self, runner):
        """Test that one round of adjacent-even splits into quarters."""
        result = runner.invoke(args=['transitions', '--kind', 'adjacent-even', '--w', '8',
                                     '--h', '6', '--mode', 'round'])
        assert result.exit_code == 0
        dist = masses(result.stdout)
        assert sum(dist.values()) == 1
        assert all((mass * 4).denominator == 1 for mass in dist.values())

    def test_transit_kind(self, runner):
        """Test that transit kinds take a length."""
        result = runner.invoke(args=['transitions', '--kind', 'adj-transit-c', '--w', '9',
                                     '--h', '7', '--ell', '3'])
        assert result.exit_code == 0
        assert sum(masses(result.stdout).values()) == 1

    def test_needs_a_seed(self, runner):
        """Test that a kind or species is required."""
        assert runner.invoke(args=['transitions']).exit_code == 2

    def test_invalid_kind_parameters(self, runner):
        """Test that impossible parameters fail with exit status 1."""
        result = runner.invoke(args=['transitions', '--kind', 'adjacent-even', '--w', '5',
                                     '--h', '6'])
        assert result.exit_code == 1


class TestSweep:
    """Test the sweep and plot commands."""

    ARGS = ['sweep', '--topology', 'torus', '--size', '12', '--p', '0.4', '--p', '0.6',
            '--replicates', '3', '--seed', '5']

    def test_threads_do_not_change_output(self, runner):
        """Test identical CSV from one and three threads."""
        one = runner.invoke(args=self.ARGS + ['--threads', '1'])
        three = runner.invoke(args=self.ARGS + ['--threads', '3'])
        assert one.exit_code == 0
        assert one.stdout == three.stdout
        lines = one.stdout.splitlines()
        assert lines[0] == 'p,n,rep,seed,r_f,rounds,status'
        assert len(lines) == 7

    def test_needs_p_values(self, runner):
        """Test that a sweep needs --p or --preset."""
        assert runner.invoke(args=['sweep', '--size', '10']).exit_code == 2

    def test_plot_is_reproducible(self, runner, tmp_path):
        """Test that plotting the same CSV twice gives identical SVG."""
        data = tmp_path / 'sweep.csv'
        assert runner.invoke(args=self.ARGS + ['--output', str(data)]).exit_code == 0
        outputs = []
        for name in ('a.svg', 'b.svg'):
            target = tmp_path / name
            result = runner.invoke(args=['plot', '--input', str(data), '--output', str(target),
                                         '--curve', 'TorusLarge'])
            assert result.exit_code == 0
            outputs.append(target.read_bytes())
        assert outputs[0] == outputs[1]
        assert b'<svg' in outputs[0]

    def test_plot_refuses_empty_csv(self, runner, tmp_path):
        """Test that a CSV without trials writes no plot."""
        data = tmp_path / 'empty.csv'
        data.write_text('p,n,rep,seed,r_f,rounds,status\n')
        target = tmp_path / 'empty.svg'
        result = runner.invoke(args=['plot', '--input', str(data), '--output', str(target)])
        assert result.exit_code == 1
        assert not target.exists()


class TestClusterEvolve:
    """Test the cluster-evolve command."""

    def test_hat4(self, runner):
        """Test that a hat tetromino ends stable with five cooperators."""
        result = runner.invoke(args=['cluster-evolve', '--species', 'hat4', '--seed', '3'])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == 'topology=window field=D'
        assert sum(line.count('C') for line in lines[1:-1]) == 5
        assert lines[-1].startswith('class=')
        assert lines[-1].endswith('status=stable')


class TestVerify:
    """Test the verify command."""

    def test_montecarlo_suite(self, runner):
        """Test that the simulation checks pass."""
        result = runner.invoke(args=['verify', '--suite', 'montecarlo'])
        assert result.exit_code == 0
        assert 'checks passed' in result.stdout

    def test_clusters_suite(self, runner):
        """Test that every sampled kind builds, has its weak count and classifies back."""
        result = runner.invoke(args=['verify', '--suite', 'clusters', '--max-side', '8'])
        assert result.exit_code == 0
        assert 'checks passed' in result.stdout

    def test_adjacent_even_check_is_pinned(self, app):
        """Test that the exact suite compares the full adjacent-even distribution."""
        results = {r.name: r for r in exact_suite(CheatAdvantage(), max_side=4)}
        check = results['adjacent-even(8,6) basic step']
        assert check.passed, check.detail


class TestDispatch:
    """Test exit statuses of the standalone entry point."""

    @pytest.fixture(autouse=True)
    def testing_env(self, monkeypatch):
        monkeypatch.setenv('FLASK_ENV', 'testing')

    def test_success(self, capsys):
        """Test exit status 0."""
        assert dispatch(['polyominoes', '--k', '3']) == 0
        assert capsys.readouterr().out.splitlines()[-1] == '3\t6'

    @pytest.mark.parametrize('argv', [['frobnicate'], ['polyominoes']])
    def test_usage_errors(self, argv):
        """Test exit status 2 for unknown commands and missing options."""
        assert dispatch(argv) == 2

    def test_domain_error(self):
        """Test exit status 1 for a domain error."""
        assert dispatch(['simulate', '--size', '2']) == 1
