# pdgrid/montecarlo/containment.py
"""How far seed clusters spread before the process stops."""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from pdgrid.clusters.atlas import SeedSpecies
from pdgrid.clusters.embedding import embed
from pdgrid.clusters.polyomino import Cell, normalize
from pdgrid.core.strategy import CheatAdvantage, Strategy
from pdgrid.engine.runner import run_to_termination
from pdgrid.engine.trace import EngineLimits
from pdgrid.errors import EscapedWindow, InvalidParams
from pdgrid.montecarlo.sampling import derive_seed
from pdgrid.montecarlo.sweep import dynamics_rng

logger = logging.getLogger(__name__)

MAX_REGROWTHS = 4


class _LeftBall(Exception):
    pass


@dataclass(frozen=True)
class ContainmentResult:
    species: str
    i: int
    radius: int
    trials: int
    escapes: int
    regrowths: int

    @property
    def escape_fraction(self) -> float:
        return self.escapes / self.trials


def seed_centre(cells: Iterable[Cell], margin: int) -> Tuple[int, int]:
    """Window coordinates of the middle of the seed's bounding box."""
    cells = normalize(cells)
    rows = max(r for r, _ in cells)
    cols = max(c for _, c in cells)
    return margin + rows // 2, margin + cols // 2


def _escapes(species: SeedSpecies, radius: int, margin: int, seed: int,
             cheat: CheatAdvantage, limits: EngineLimits) -> bool:
    config = embed(species.cells, species.field, margin)
    topology = config.topology
    cr, cc = seed_centre(species.cells, margin)
    field = int(species.field)

    def observer(_round, state, trace):
        if trace is None:
            return
        for v in trace.flipped_vertices:
            if state.strategies[v] != field:
                r, c = topology.coords(v)
                if abs(r - cr) + abs(c - cc) > radius:
                    raise _LeftBall()

    try:
        run_to_termination(config, dynamics_rng(seed), cheat, limits, observer=observer)
    except _LeftBall:
        return True
    return False


def containment_experiment(species: SeedSpecies, i: int, trials: int, seed: int,
                           cheat: Optional[CheatAdvantage] = None,
                           limits: Optional[EngineLimits] = None) -> ContainmentResult:
    """Fraction of runs in which the cluster ever leaves the ball of radius 2i+4.

    The ball is centred on the seed and measured in grid distance. The window
    leaves room beyond the ball; if a run still reaches the window edge the
    trial is rerun in a larger window.

    Raises:
        InvalidParams: If the species does not sit in a defector field or i < 0.
    """
    if species.field != Strategy.DEFECT:
        raise InvalidParams(f'{species.value} is not a cooperator cluster')
    if i < 0 or trials < 1:
        raise InvalidParams(f'Need i >= 0 and trials >= 1, got i={i} trials={trials}')
    cheat = cheat or CheatAdvantage()
    limits = limits or EngineLimits()
    radius = 2 * i + 4
    escapes = regrowths = 0
    for trial in range(trials):
        margin = radius + limits.escape_margin + 2
        trial_seed = derive_seed(seed, 0, trial)
        for attempt in range(MAX_REGROWTHS + 1):
            try:
                escaped = _escapes(species, radius, margin, trial_seed, cheat, limits)
                break
            except EscapedWindow as e:
                if attempt == MAX_REGROWTHS:
                    raise
                regrowths += 1
                logger.warning(f'Trial {trial} reached the window edge ({e}); regrowing')
                margin *= 2
        escapes += escaped
    return ContainmentResult(species.value, i, radius, trials, escapes, regrowths)


def defector_growth_box(cells: Iterable[Cell], margin: int) -> Tuple[int, int, int, int]:
    """Rows and columns (inclusive) a defector cluster in a cooperator field stays within.

    The seed's bounding box widened by two on every side.
    """
    cells = normalize(cells)
    rows = max(r for r, _ in cells)
    cols = max(c for _, c in cells)
    return margin - 2, margin + rows + 2, margin - 2, margin + cols + 2


def within_box(vertices, topology, box) -> bool:
    top, bottom, left, right = box
    coords = np.array([topology.coords(v) for v in vertices]).reshape(-1, 2)
    if not coords.size:
        return True
    return bool(((coords[:, 0] >= top) & (coords[:, 0] <= bottom)
                 & (coords[:, 1] >= left) & (coords[:, 1] <= right)).all())
