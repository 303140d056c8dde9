# pdgrid/exact/transitions.py
"""One-round and basic-step transition distributions of window configurations."""

import logging
from fractions import Fraction
from math import factorial
from typing import Dict, Optional, Tuple

from pdgrid.clusters.embedding import reembed, window_cells
from pdgrid.core.configuration import Configuration, weak_set
from pdgrid.core.strategy import CheatAdvantage
from pdgrid.core.topology import WINDOW
from pdgrid.engine.forced import DEFAULT_THRESHOLD, collapse_forced, successor_counts
from pdgrid.errors import InvalidParams
from pdgrid.exact.distribution import (
    TransitionDistribution, canonical_cells, classify_outcome,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_FORCED_DEPTH = 256
# Field vertices two or more steps from the cluster cannot be weak.
REEMBED_MARGIN = 3


def _require_window(config: Configuration):
    if config.topology.kind != WINDOW:
        raise InvalidParams('Exact analysis works on window configurations')


def _recentre(config: Configuration) -> Configuration:
    return reembed(config, REEMBED_MARGIN)


def round_distribution(config: Configuration, cheat: Optional[CheatAdvantage] = None,
                       threshold: int = DEFAULT_THRESHOLD,
                       method: str = 'memo') -> TransitionDistribution:
    """Distribution of the next configuration over uniform update orders.

    Every order has mass 1/|W|!; orders with equal flip sets give the same
    successor and are merged. Keys are configurations.

    Raises:
        ThresholdExceeded: If |W| exceeds threshold.
    """
    cheat = cheat or CheatAdvantage()
    counts = successor_counts(config, cheat, method=method, threshold=threshold)
    orders = factorial(len(weak_set(config, cheat)))
    outcomes = {}
    for flipped in sorted(counts, key=sorted):
        outcomes[config.with_flips(flipped)] = Fraction(counts[flipped], orders)
    return TransitionDistribution(outcomes)


def basic_step_branches(config: Configuration, cheat: Optional[CheatAdvantage] = None,
                        max_forced_depth: int = DEFAULT_MAX_FORCED_DEPTH,
                        threshold: int = DEFAULT_THRESHOLD,
                        method: str = 'memo') -> Dict[tuple, Tuple[Configuration, Fraction]]:
    """Next basic configurations keyed by canonical cells.

    Each value is a representative configuration and the mass of all
    branches reaching it. A stable configuration maps to itself.

    Raises:
        ThresholdExceeded: If a branching round has too many weak vertices.
        DepthExceeded: If forced rounds do not end.
    """
    _require_window(config)
    cheat = cheat or CheatAdvantage()
    config = _recentre(config)
    if not weak_set(config, cheat):
        return {canonical_cells(window_cells(config)): (config, Fraction(1))}

    branches = {}
    for successor, mass in round_distribution(config, cheat, threshold, method).items():
        basic, steps = collapse_forced(_recentre(successor), cheat, max_forced_depth,
                                       threshold, normalize=_recentre)
        key = canonical_cells(window_cells(basic))
        if key in branches:
            rep, total = branches[key]
            branches[key] = (rep, total + mass)
        else:
            branches[key] = (basic, mass)
        logger.debug(f'Branch of mass {mass} collapsed {steps} forced rounds')
    return branches


def basic_step_distribution(config: Configuration, cheat: Optional[CheatAdvantage] = None,
                            max_forced_depth: int = DEFAULT_MAX_FORCED_DEPTH,
                            threshold: int = DEFAULT_THRESHOLD,
                            method: str = 'memo') -> TransitionDistribution:
    """Distribution of the next basic configuration's outcome class."""
    cheat = cheat or CheatAdvantage()
    branches = basic_step_branches(config, cheat, max_forced_depth, threshold, method)
    outcomes = {}
    for basic, mass in branches.values():
        cls = classify_outcome(basic, cheat)
        outcomes[cls] = outcomes.get(cls, Fraction(0)) + mass
    dist = TransitionDistribution(outcomes)
    dist.check()
    return dist

