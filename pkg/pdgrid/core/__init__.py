# pdgrid/core/__init__.py
"""Topologies, strategies, exact scores and weak-vertex determination."""

from pdgrid.core.strategy import (
    DEFAULT_CHEAT, CheatAdvantage, ScoreRank, Strategy, payoff, regime_key,
)
from pdgrid.core.topology import CYCLE, TORUS, WINDOW, Topology
from pdgrid.core.configuration import (
    Configuration, cooperator_counts, cooperator_neighbors, density,
    initial_persistent_cooperators, score, weak_set,
)
from pdgrid.core.fixtures import format_fixture, parse_fixture

__all__ = [
    'DEFAULT_CHEAT', 'CheatAdvantage', 'ScoreRank', 'Strategy', 'payoff', 'regime_key',
    'CYCLE', 'TORUS', 'WINDOW', 'Topology',
    'Configuration', 'cooperator_counts', 'cooperator_neighbors', 'density',
    'initial_persistent_cooperators', 'score', 'weak_set',
    'format_fixture', 'parse_fixture',
]
