# pdgrid/core/strategy.py
"""Strategies, the cheating advantage and exact score ranks."""

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Union

from pdgrid.errors import InvalidParams

DEFAULT_CHEAT = Fraction(7, 6)
REGIME_UPPER = Fraction(4, 3)


class Strategy(IntEnum):
    """Binary strategy of a vertex."""

    DEFECT = 0
    COOPERATE = 1

    @property
    def symbol(self) -> str:
        return 'C' if self is Strategy.COOPERATE else 'D'

    @classmethod
    def from_symbol(cls, symbol: str) -> 'Strategy':
        if symbol == 'C':
            return cls.COOPERATE
        if symbol == 'D':
            return cls.DEFECT
        raise InvalidParams(f'Unknown strategy symbol: {symbol!r}')

    def opposite(self) -> 'Strategy':
        return Strategy(1 - int(self))


class CheatAdvantage:
    """The payoff T a defector earns against a cooperator."""

    def __init__(self, value: Union[Fraction, int, str] = DEFAULT_CHEAT):
        """
        Args:
            value: Exact rational, or a string such as '7/6'.

        Raises:
            InvalidParams: If value is not strictly greater than 1.
        """
        try:
            value = Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidParams(f'Invalid cheating advantage: {value!r}') from e
        if value <= 1:
            raise InvalidParams(f'Cheating advantage must exceed 1, got {value}')
        self.value = value

    @property
    def in_regime(self) -> bool:
        """True when 1 < T < 4/3, where ties always resolve to defectors."""
        return self.value < REGIME_UPPER

    def require_regime(self):
        if not self.in_regime:
            raise InvalidParams(f'T={self.value} lies outside (1, 4/3)')

    def __eq__(self, other):
        return isinstance(other, CheatAdvantage) and other.value == self.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f'<CheatAdvantage {self.value}>'


def payoff(a: Strategy, b: Strategy, cheat: CheatAdvantage) -> Fraction:
    """Payoff to a player using `a` against an opponent using `b`."""
    if a == Strategy.COOPERATE:
        return Fraction(1) if b == Strategy.COOPERATE else Fraction(0)
    return cheat.value if b == Strategy.COOPERATE else Fraction(0)


def regime_key(role: int, coop_neighbors: int) -> int:
    """Integer rank equivalent to ScoreRank ordering for any T in (1, 4/3).

    Defector with k cooperating neighbours maps to 2k+1, cooperator with m
    maps to 2m, so defector(k) > cooperator(m) iff k >= m and the parity
    gives the role of the maximum.
    """
    return 2 * coop_neighbors + (1 - role)


@dataclass(frozen=True)
class ScoreRank:
    """Exact score of a vertex together with its role."""

    role: Strategy
    coop_neighbors: int
    value: Fraction

    @classmethod
    def of(cls, role: Strategy, coop_neighbors: int, cheat: CheatAdvantage) -> 'ScoreRank':
        unit = cheat.value if role == Strategy.DEFECT else Fraction(1)
        return cls(Strategy(role), coop_neighbors, unit * coop_neighbors)

    def _key(self):
        return (self.value, self.role == Strategy.DEFECT)

    def __lt__(self, other: 'ScoreRank') -> bool:
        return self._key() < other._key()

    def __le__(self, other: 'ScoreRank') -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: 'ScoreRank') -> bool:
        return self._key() > other._key()

    def __ge__(self, other: 'ScoreRank') -> bool:
        return self._key() >= other._key()
