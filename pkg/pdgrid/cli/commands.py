# pdgrid/cli/commands.py
"""Command-line interface registered on the Flask app."""

import logging
import os
import sys
from functools import wraps
from pathlib import Path

import click
import simplejson as json
from flask import current_app
from flask.cli import AppGroup, ScriptInfo

from pdgrid.clusters import (
    KIND_ORDER, DFamilyKind, SeedSpecies, embed, enumerate_fixed_polyominoes, generate,
)
from pdgrid.core import CheatAdvantage, Strategy, Topology, format_fixture, parse_fixture
from pdgrid.engine import EngineLimits, run_to_termination
from pdgrid.errors import EscapedWindow, PDGridError, VerificationFailed
from pdgrid.exact import (
    basic_step_distribution, classify_outcome, format_transitions, round_distribution,
)
from pdgrid.montecarlo import (
    PRESETS, SweepSpec, TheoryCurve, dynamics_rng, preset_spec, random_config, sweep,
    write_sweep_csv,
)
from pdgrid.cli.plot import PlotSpec, render_plot
from pdgrid.cli.verify import SUITES, run_suite

logger = logging.getLogger(__name__)

cli = AppGroup('pdgrid', help='Asynchronous Prisoner\'s Dilemma on cycles and tori.')

EVOLVE_MARGIN = 6
MAX_REGROWTHS = 6


def _cheat(value):
    return CheatAdvantage(value or current_app.config['CHEAT_ADVANTAGE'])


def _limits(max_rounds=None) -> EngineLimits:
    cfg = dict(current_app.config)
    if max_rounds:
        cfg['MAX_ROUNDS'] = max_rounds
    return EngineLimits.from_config(cfg)


def reports_errors(f):
    """Turn domain errors into click errors with exit status 1."""
    @wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except PDGridError as e:
            raise click.ClickException(f'{type(e).__name__}: {e}') from e
    return wrapper


cheat_option = click.option('--cheat', default=None,
                            help='Cheating advantage T as an exact fraction, e.g. 7/6.')


@cli.command()
@click.option('--topology', type=click.Choice(['cycle', 'torus']), default='torus')
@click.option('--size', type=int, default=100, help='n (cycle length or torus side).')
@click.option('--p', 'p', type=float, default=0.5, help='Initial cooperator probability.')
@click.option('--seed', type=int, default=None, help='Trial seed (default: MASTER_SEED).')
@click.option('--fixture', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Start from a fixture file instead of a random configuration.')
@click.option('--max-rounds', type=int, default=None)
@click.option('--trajectory/--no-trajectory', default=True,
              help='Write one JSON line per round before the summary.')
@cheat_option
@reports_errors
def simulate(topology, size, p, seed, fixture, max_rounds, trajectory, cheat):
    """Run one process to termination and print its trajectory."""
    seed = current_app.config['MASTER_SEED'] if seed is None else seed
    if fixture:
        config = parse_fixture(Path(fixture).read_text())
    else:
        build = Topology.cycle if topology == 'cycle' else Topology.torus
        config = random_config(build(size), p, seed)
    result = run_to_termination(config, dynamics_rng(seed), _cheat(cheat), _limits(max_rounds),
                                trajectory=sys.stdout if trajectory else None)
    sys.stdout.flush()
    summary = {
        'status': result.status.label(),
        'rounds': result.rounds,
        'finalDensity': float(result.final_density),
        'finalDensityExact': str(result.final_density),
        'seed': seed,
    }
    click.echo(json.dumps(summary))


@cli.command('sweep')
@click.option('--topology', type=click.Choice(['cycle', 'torus']), default='torus')
@click.option('--size', type=int, default=100)
@click.option('--p', 'p_values', type=float, multiple=True, help='Repeat for several values.')
@click.option('--preset', type=click.Choice(sorted(PRESETS)), default=None,
              help='Use a named p grid instead of --p.')
@click.option('--replicates', type=int, default=10)
@click.option('--seed', type=int, default=None, help='Master seed (default: MASTER_SEED).')
@click.option('--threads', type=int, default=None, help='Worker threads (default: THREADS).')
@click.option('--max-rounds', type=int, default=None)
@click.option('--output', type=click.Path(dir_okay=False), default=None,
              help='CSV destination (default: stdout).')
@cheat_option
@reports_errors
def sweep_command(topology, size, p_values, preset, replicates, seed, threads, max_rounds,
                  output, cheat):
    """Run independent trials over a grid of p values and write CSV."""
    seed = current_app.config['MASTER_SEED'] if seed is None else seed
    threads = threads or current_app.config['THREADS']
    if preset:
        spec = preset_spec(preset, size, replicates, seed, _cheat(cheat), _limits(max_rounds))
    elif p_values:
        spec = SweepSpec(topology, size, tuple(p_values), replicates, seed, _cheat(cheat),
                         _limits(max_rounds))
    else:
        raise click.UsageError('Give --p at least once or choose a --preset')
    result = sweep(spec, threads)
    if output:
        with open(output, 'w', newline='') as stream:
            write_sweep_csv(result.records, stream)
        click.echo(f'✓ Wrote {len(result.records)} trials to {output}', err=True)
    else:
        write_sweep_csv(result.records, sys.stdout)
        sys.stdout.flush()


def _evolve(species: SeedSpecies, seed: int, cheat, limits):
    margin = EVOLVE_MARGIN
    for attempt in range(MAX_REGROWTHS + 1):
        config = embed(species.cells, species.field, margin)
        try:
            # Regrown windows replay the same orders: sorted weak sets keep their relative order.
            return run_to_termination(config, dynamics_rng(seed), cheat, limits)
        except EscapedWindow as e:
            if attempt == MAX_REGROWTHS:
                raise
            logger.warning(f'{species.value} reached the window edge ({e}); regrowing')
            margin *= 2


@cli.command('cluster-evolve')
@click.option('--species', type=click.Choice([s.value for s in SeedSpecies]), required=True)
@click.option('--seed', type=int, default=None)
@click.option('--max-rounds', type=int, default=None)
@cheat_option
@reports_errors
def cluster_evolve(species, seed, max_rounds, cheat):
    """Evolve a seed cluster in a growing window and print the result."""
    seed = current_app.config['MASTER_SEED'] if seed is None else seed
    cheat = _cheat(cheat)
    result = _evolve(SeedSpecies(species), seed, cheat, _limits(max_rounds))
    final = result.config
    outcome = classify_outcome(final, cheat)
    click.echo(format_fixture(final), nl=False)
    click.echo(f'class={outcome} rounds={result.rounds} status={result.status.label()}')


def _transition_seed(kind, w, h, ell, species):
    if species:
        found = SeedSpecies(species)
        return embed(found.cells, found.field, 3)
    if not (kind and w and h):
        raise click.UsageError('Give --species or all of --kind, --w and --h')
    shape = generate(DFamilyKind(kind, w, h, ell))
    return embed(shape.cells, Strategy.DEFECT, 3)


@cli.command()
@click.option('--kind', type=click.Choice(KIND_ORDER), default=None)
@click.option('--w', type=int, default=None)
@click.option('--h', type=int, default=None)
@click.option('--ell', type=int, default=0)
@click.option('--species', type=click.Choice([s.value for s in SeedSpecies]), default=None)
@click.option('--mode', type=click.Choice(['basic', 'round']), default='basic')
@click.option('--method', type=click.Choice(['memo', 'full']), default='memo')
@cheat_option
@reports_errors
def transitions(kind, w, h, ell, species, mode, method, cheat):
    """Print the exact next-step distribution of a cluster kind."""
    cheat = _cheat(cheat)
    config = _transition_seed(kind, w, h, ell, species)
    threshold = current_app.config['ENUMERATION_THRESHOLD']
    if mode == 'round':
        dist = round_distribution(config, cheat, threshold, method)
        dist = dist.map(lambda successor: classify_outcome(successor, cheat))
    else:
        dist = basic_step_distribution(config, cheat, current_app.config['MAX_FORCED_DEPTH'],
                                       threshold, method)
    for line in format_transitions(dist):
        click.echo(line)


@cli.command()
@click.option('--k', 'k', type=click.IntRange(1, 8), required=True, help='Largest order.')
@click.option('--shapes/--no-shapes', default=False, help='Also draw the order-k shapes.')
@reports_errors
def polyominoes(k, shapes):
    """Count fixed polyominoes of every order up to k."""
    for order in range(1, k + 1):
        click.echo(f'{order}\t{len(enumerate_fixed_polyominoes(order))}')
    if shapes:
        for poly in enumerate_fixed_polyominoes(k):
            click.echo('')
            for row in poly.render('#', '.'):
                click.echo(row)


@cli.command()
@click.option('--suite', type=click.Choice(SUITES), default='all')
@click.option('--threads', type=int, default=None)
@click.option('--max-side', type=int, default=6,
              help='Largest w and h sampled by the stabilisation check.')
@cheat_option
@reports_errors
def verify(suite, threads, max_side, cheat):
    """Run a verification suite; exits 1 if any check fails."""
    threads = threads or current_app.config['THREADS']
    results = run_suite(suite, _cheat(cheat), threads, max_side)
    for result in results:
        click.echo(result.line())
    failed = [r for r in results if not r.passed]
    if failed:
        raise VerificationFailed(f'{len(failed)} of {len(results)} checks failed')
    click.echo(f'All {len(results)} checks passed.')


@cli.command()
@click.option('--input', 'input_csv', type=click.Path(exists=True, dir_okay=False),
              required=True)
@click.option('--output', type=click.Path(dir_okay=False), required=True)
@click.option('--curve', 'curves', type=click.Choice([c.value for c in TheoryCurve]),
              multiple=True)
@click.option('--xlim', type=(float, float), default=None)
@click.option('--ylim', type=(float, float), default=None)
@reports_errors
def plot(input_csv, output, curves, xlim, ylim):
    """Plot mean r_f per p from a sweep CSV as SVG."""
    spec = PlotSpec(Path(input_csv), Path(output), tuple(TheoryCurve(c) for c in curves),
                    xlim, ylim)
    render_plot(spec)
    click.echo(f'✓ Plot written to {output}', err=True)


def dispatch(argv) -> int:
    """Run a command line outside `flask`; returns the exit status.

    0 on success, 1 on a failed verification or domain error, 2 on a usage
    error.
    """
    from pdgrid import create_app

    app = create_app(os.getenv('FLASK_ENV') or 'default')
    with app.app_context():
        try:
            code = cli.main(args=list(argv), prog_name='pdgrid', standalone_mode=False,
                            obj=ScriptInfo(create_app=lambda: app))
        except click.UsageError as e:
            e.show()
            return 2
        except click.ClickException as e:
            e.show()
            return e.exit_code
        except click.Abort:
            click.echo('Aborted!', err=True)
            return 1
    return code if isinstance(code, int) else 0


def register_commands(app):
    """Register CLI commands."""
    for command in cli.commands.values():
        app.cli.add_command(command)
