# pdgrid/cli/__init__.py
"""Command-line surface: simulation, sweeps, exact transitions, verification and plots."""

from pdgrid.cli.commands import cli, dispatch, register_commands
from pdgrid.cli.plot import PlotSpec, render_plot
from pdgrid.cli.verify import CheckResult, run_suite

__all__ = ['cli', 'dispatch', 'register_commands', 'PlotSpec', 'render_plot',
           'CheckResult', 'run_suite']
