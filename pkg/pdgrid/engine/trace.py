# pdgrid/engine/trace.py
"""Per-round records and termination statuses."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from pdgrid.errors import InvalidParams

STABLE = 'stable'
PERIODIC = 'periodic'
MAX_ROUNDS = 'max_rounds'


@dataclass(frozen=True)
class RoundTrace:
    """What happened in one round.

    `touched[k]` lists the (vertex, new count) pairs the incremental update
    wrote at subround k; it is empty when order[k] did not flip.
    """

    weak_before: Tuple[int, ...]
    order: Tuple[int, ...]
    flipped: Tuple[bool, ...]
    touched: Tuple[Tuple[Tuple[int, int], ...], ...] = ()

    @property
    def flips(self) -> int:
        return sum(self.flipped)

    @property
    def flipped_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v, f in zip(self.order, self.flipped) if f)


@dataclass(frozen=True)
class TerminationStatus:
    """How a run ended."""

    kind: str
    at_round: int
    start_round: Optional[int] = None
    period: Optional[int] = None

    @classmethod
    def stable(cls, at_round: int) -> 'TerminationStatus':
        return cls(STABLE, at_round)

    @classmethod
    def periodic(cls, start_round: int, at_round: int) -> 'TerminationStatus':
        return cls(PERIODIC, at_round, start_round, at_round - start_round)

    @classmethod
    def max_rounds(cls, at_round: int) -> 'TerminationStatus':
        return cls(MAX_ROUNDS, at_round)

    @property
    def is_stable(self) -> bool:
        return self.kind == STABLE

    def label(self) -> str:
        if self.kind == PERIODIC:
            return f'periodic:{self.start_round}+{self.period}'
        return self.kind


@dataclass(frozen=True)
class EngineLimits:
    """Bounds on a single run."""

    max_rounds: int = 10000
    max_forced_depth: int = 256
    escape_margin: int = 2
    period_window: int = 4096

    def __post_init__(self):
        if min(self.max_rounds, self.max_forced_depth, self.escape_margin,
               self.period_window) < 1:
            raise InvalidParams(f'Engine limits must be positive: {self}')

    @classmethod
    def from_config(cls, cfg) -> 'EngineLimits':
        return cls(
            max_rounds=int(cfg['MAX_ROUNDS']),
            max_forced_depth=int(cfg['MAX_FORCED_DEPTH']),
            escape_margin=int(cfg['ESCAPE_MARGIN']),
            period_window=int(cfg['PERIOD_WINDOW']),
        )


@dataclass(frozen=True)
class RunResult:
    """Final configuration and bookkeeping of a run."""

    config: object
    status: TerminationStatus
    rounds: int
    final_density: Fraction
