# pdgrid/montecarlo/__init__.py
"""Seeded random initialisation, parallel sweeps and theory curves."""

from pdgrid.montecarlo.sampling import (
    cluster_census, derive_seed, expected_cluster_count, perimeter, random_config,
)
from pdgrid.montecarlo.theory import TheoryCurve, theory_curve
from pdgrid.montecarlo.sweep import (
    CSV_HEADER, PRESETS, PSummary, RunRecord, SweepResult, SweepSpec, dynamics_rng,
    preset_spec, read_sweep_csv, run_trial, summarize, sweep, write_sweep_csv,
)
from pdgrid.montecarlo.containment import (
    ContainmentResult, containment_experiment, defector_growth_box, within_box,
)

__all__ = [
    'cluster_census', 'derive_seed', 'expected_cluster_count', 'perimeter', 'random_config',
    'TheoryCurve', 'theory_curve', 'CSV_HEADER', 'PRESETS', 'PSummary', 'RunRecord',
    'SweepResult', 'SweepSpec', 'dynamics_rng', 'preset_spec', 'read_sweep_csv', 'run_trial',
    'summarize', 'sweep', 'write_sweep_csv', 'ContainmentResult', 'containment_experiment',
    'defector_growth_box', 'within_box',
]
