# pdgrid/exact/series.py
"""The cluster-size bound series and its closed-form limit.

A cluster started from four cells stabilises within each block of three
basic steps with probability at least 1/8, and after j blocks fits in a
ball whose size is (6j+8)^2 + (6j+7)^2. The sums below are exact.
"""

from fractions import Fraction

from pdgrid.errors import InvalidParams

STABILISE = Fraction(1, 8)
SURVIVE = 1 - STABILISE


def _ball_size(j: int) -> int:
    return (6 * j + 8) ** 2 + (6 * j + 7) ** 2


def clusterbound_series(jmax: int) -> Fraction:
    """Partial sum over j = 1..jmax of (7/8)^j (1/8) ((6j+8)^2 + (6j+7)^2).

    Raises:
        InvalidParams: If jmax < 1.
    """
    if jmax < 1:
        raise InvalidParams(f'jmax must be at least 1, got {jmax}')
    # Horner over the common denominator 8^(jmax+1).
    numerator, power = 0, 1
    for j in range(1, jmax + 1):
        power *= 7
        numerator = numerator * 8 + power * _ball_size(j)
    return Fraction(numerator, 8 ** (jmax + 1))


def _moments(x: Fraction):
    """Sums over j >= 1 of x^j, j x^j and j^2 x^j."""
    s0 = x / (1 - x)
    s1 = x / (1 - x) ** 2
    s2 = x * (1 + x) / (1 - x) ** 3
    return s0, s1, s2


def clusterbound_limit() -> Fraction:
    """Exact value of the full series, 71351/8."""
    s0, s1, s2 = _moments(SURVIVE)
    # (6j+8)^2 + (6j+7)^2 = 72 j^2 + 180 j + 113
    return STABILISE * (72 * s2 + 180 * s1 + 113 * s0)


def clusterbound_tail(jmax: int) -> Fraction:
    """Mass of the series beyond jmax; limit == partial sum + tail."""
    return clusterbound_limit() - clusterbound_series(jmax)


def live_cluster_bound(radius: int) -> Fraction:
    """Upper bound on the final size of a live cluster held in a ball of `radius`.

    Each basic step widens the ball by at most 2, and each block of three
    steps stabilises with probability at least 1/8, so the final size is at
    most the sum over j >= 1 of (7/8)^(j-1) (1/8) B(radius + 6j) with
    B(r) = r^2 + (r+1)^2.
    """
    if radius < 0:
        raise InvalidParams(f'radius must be non-negative, got {radius}')
    s0, s1, s2 = _moments(SURVIVE)
    # B(r + 6j) = 72 j^2 + (24 r + 12) j + (2 r^2 + 2 r + 1)
    total = 72 * s2 + (24 * radius + 12) * s1 + (2 * radius ** 2 + 2 * radius + 1) * s0
    return STABILISE * total / SURVIVE
