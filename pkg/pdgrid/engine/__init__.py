# pdgrid/engine/__init__.py
"""Round execution, forced-configuration handling and run termination."""

from pdgrid.engine.trace import (
    MAX_ROUNDS, PERIODIC, STABLE, EngineLimits, RoundTrace, RunResult, TerminationStatus,
)
from pdgrid.engine.state import ProcessState
from pdgrid.engine.rounds import (
    apply_round, check_permutation, random_order, recompute_vs_incremental, step_random,
)
from pdgrid.engine.forced import (
    Forcedness, collapse_forced, forced_successor, is_forced, successor_counts,
)
from pdgrid.engine.runner import PeriodDetector, run_to_termination, trajectory_record

__all__ = [
    'MAX_ROUNDS', 'PERIODIC', 'STABLE', 'EngineLimits', 'RoundTrace', 'RunResult',
    'TerminationStatus', 'ProcessState', 'apply_round', 'check_permutation',
    'random_order', 'recompute_vs_incremental', 'step_random', 'Forcedness',
    'collapse_forced', 'forced_successor', 'is_forced', 'successor_counts',
    'PeriodDetector', 'run_to_termination', 'trajectory_record',
]
