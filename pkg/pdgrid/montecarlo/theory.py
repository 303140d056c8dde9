# pdgrid/montecarlo/theory.py
"""Closed-form predictions of the final cooperator density."""

import math
from enum import Enum

from pdgrid.errors import InvalidParams
from pdgrid.montecarlo.sampling import check_probability


class TheoryCurve(Enum):
    CYCLE_LOWER_E = 'CycleLowerE'
    CYCLE_UPPER_E = 'CycleUpperE'
    CYCLE_LOWER_AAS = 'CycleLowerAAS'
    TORUS_SMALL = 'TorusSmall'
    TORUS_SMALL_UPPER = 'TorusSmallUpper'
    TORUS_LARGE = 'TorusLarge'
    TORUS_FLOOR = 'TorusFloor'


def theory_curve(name, p: float, n: int = 0) -> float:
    """Value of a named curve at (p, n); n only matters for TorusSmallUpper.

    The log in TorusSmallUpper is the natural log.
    """
    check_probability(p)
    try:
        curve = TheoryCurve(name)
    except ValueError as e:
        raise InvalidParams(f'Unknown theory curve: {name!r}') from e
    q = 1 - p
    if curve is TheoryCurve.CYCLE_LOWER_E:
        return 3 * p ** 5 - 2 * p ** 6
    if curve is TheoryCurve.CYCLE_UPPER_E:
        return p - p * q ** 2 - 2 * p ** 2 * q ** 2
    if curve is TheoryCurve.CYCLE_LOWER_AAS:
        return 3 * p ** 5 * q ** 2
    if curve is TheoryCurve.TORUS_SMALL:
        return 20 * p ** 3
    if curve is TheoryCurve.TORUS_SMALL_UPPER:
        if n < 2:
            raise InvalidParams(f'TorusSmallUpper needs n >= 2, got {n}')
        return 20 * p ** 3 + 2 * 19 * math.log(n) ** 4 * p ** 4
    if curve is TheoryCurve.TORUS_LARGE:
        return 2 * p - 1
    return p ** 13
