# pdgrid/exact/__init__.py
"""Exact-rational transition analysis of clusters in uniform fields."""

from pdgrid.exact.distribution import (
    EMPTY, KIND, SPECIES, STABLE_CELLS, UNCLASSIFIED, OutcomeClass, TransitionDistribution,
    canonical_cells, classify_outcome, format_transitions,
)
from pdgrid.exact.transitions import (
    REEMBED_MARGIN, basic_step_branches, basic_step_distribution, round_distribution,
)
from pdgrid.exact.absorption import (
    AbsorptionReport, StepMass, absorption, seed_configuration, stabilisation_probability,
    stable_time_table, verify_stable_time,
)
from pdgrid.exact.series import (
    clusterbound_limit, clusterbound_series, clusterbound_tail, live_cluster_bound,
)

__all__ = [
    'EMPTY', 'KIND', 'SPECIES', 'STABLE_CELLS', 'UNCLASSIFIED', 'OutcomeClass',
    'TransitionDistribution', 'canonical_cells', 'classify_outcome',
    'format_transitions', 'REEMBED_MARGIN', 'basic_step_branches', 'basic_step_distribution',
    'round_distribution', 'AbsorptionReport', 'StepMass', 'absorption', 'seed_configuration',
    'stabilisation_probability', 'stable_time_table', 'verify_stable_time',
    'clusterbound_limit', 'clusterbound_series', 'clusterbound_tail', 'live_cluster_bound',
]
