# pdgrid/montecarlo/sweep.py
"""Parameter sweeps over the initial cooperator density."""

import csv
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from pdgrid.core.strategy import CheatAdvantage
from pdgrid.core.topology import CYCLE, TORUS, Topology
from pdgrid.engine.runner import run_to_termination
from pdgrid.engine.trace import STABLE, EngineLimits
from pdgrid.errors import InvalidParams, PDGridError, ScheduleError
from pdgrid.montecarlo.sampling import check_probability, derive_seed, random_config

logger = logging.getLogger(__name__)

CSV_HEADER = ['p', 'n', 'rep', 'seed', 'r_f', 'rounds', 'status']


def _grid(start: int, stop: int, scale: int) -> Tuple[float, ...]:
    return tuple(round(i / scale, 6) for i in range(start, stop + 1))


# Named p grids for the standard small-p, large-p and full-range sweeps.
PRESETS = {
    'torus-small': (TORUS, _grid(1, 70, 1000)),
    'torus-large': (TORUS, _grid(920, 999, 1000)),
    'cycle': (CYCLE, _grid(1, 99, 100)),
    'torus-full': (TORUS, _grid(1, 99, 100)),
}


def format_number(x: float) -> str:
    return f'{x:.10g}'


@dataclass(frozen=True)
class SweepSpec:
    """Everything that determines a sweep's output."""

    topology: str
    n: int
    p_values: Tuple[float, ...]
    replicates: int
    master_seed: int
    cheat: CheatAdvantage = field(default_factory=CheatAdvantage)
    limits: EngineLimits = field(default_factory=EngineLimits)

    def __post_init__(self):
        if self.topology not in (CYCLE, TORUS):
            raise InvalidParams(f'Sweeps run on cycles or tori, got {self.topology!r}')
        if self.replicates < 1:
            raise InvalidParams(f'replicates must be at least 1, got {self.replicates}')
        if not self.p_values:
            raise InvalidParams('A sweep needs at least one p value')
        for p in self.p_values:
            check_probability(p)
        object.__setattr__(self, 'p_values', tuple(float(p) for p in self.p_values))

    def build_topology(self) -> Topology:
        if self.topology == CYCLE:
            return Topology.cycle(self.n)
        return Topology.torus(self.n)


@dataclass(frozen=True)
class RunRecord:
    p: float
    n: int
    rep: int
    seed: int
    r_f: Optional[Fraction]
    rounds: int
    status: str

    @property
    def is_stable(self) -> bool:
        return self.status == STABLE

    def to_row(self) -> List[str]:
        r_f = '' if self.r_f is None else format_number(float(self.r_f))
        return [format_number(self.p), str(self.n), str(self.rep), str(self.seed),
                r_f, str(self.rounds), self.status]


@dataclass(frozen=True)
class PSummary:
    """Statistics of the trials at one p; the mean covers stable trials only."""

    p: float
    n: int
    trials: int
    mean_r_f: Optional[float]
    std_error: Optional[float]
    tally: Dict[str, int]

    def to_dict(self) -> dict:
        return {'p': self.p, 'n': self.n, 'trials': self.trials, 'meanRf': self.mean_r_f,
                'stdError': self.std_error, 'tally': dict(sorted(self.tally.items()))}


@dataclass
class SweepResult:
    records: List[RunRecord]
    summaries: List[PSummary]


def preset_spec(name: str, n: int, replicates: int, master_seed: int,
                cheat: Optional[CheatAdvantage] = None,
                limits: Optional[EngineLimits] = None) -> SweepSpec:
    try:
        topology, p_values = PRESETS[name]
    except KeyError:
        raise InvalidParams(f'Unknown preset {name!r}; choose from {sorted(PRESETS)}')
    return SweepSpec(topology, n, p_values, replicates, master_seed,
                     cheat or CheatAdvantage(), limits or EngineLimits())


def dynamics_rng(seed: int) -> np.random.Generator:
    """Generator for update orders, independent of the one drawing C_0."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1,)))


def run_trial(spec: SweepSpec, p_index: int, rep: int) -> RunRecord:
    """One independent trial; engine errors end up in the status field."""
    p = spec.p_values[p_index]
    seed = derive_seed(spec.master_seed, p_index, rep)
    try:
        config = random_config(spec.build_topology(), p, seed)
        result = run_to_termination(config, dynamics_rng(seed), spec.cheat, spec.limits)
    except PDGridError as e:
        logger.warning(f'Trial p={p} rep={rep} failed: {e}')
        return RunRecord(p, spec.n, rep, seed, None, 0, f'error:{type(e).__name__}')
    return RunRecord(p, spec.n, rep, seed, result.final_density, result.rounds,
                     result.status.label())


def summarize(records: Sequence[RunRecord]) -> List[PSummary]:
    """Per-p mean r_f and standard error over stable trials, plus a status tally."""
    groups = {}
    for record in records:
        groups.setdefault((record.p, record.n), []).append(record)
    summaries = []
    for (p, n), group in sorted(groups.items()):
        tally = Counter(r.status for r in group)
        values = np.array([float(r.r_f) for r in group if r.is_stable and r.r_f is not None])
        mean = float(values.mean()) if values.size else None
        if values.size > 1:
            error = float(values.std(ddof=1) / np.sqrt(values.size))
        else:
            error = 0.0 if values.size else None
        summaries.append(PSummary(p, n, len(group), mean, error, dict(tally)))
    return summaries


def sweep(spec: SweepSpec, threads: int = 1) -> SweepResult:
    """Run replicates x len(p_values) trials; output is independent of threads."""
    tasks = [(i, rep) for i in range(len(spec.p_values)) for rep in range(spec.replicates)]
    logger.info(f'Sweeping {len(tasks)} trials on {spec.topology} n={spec.n} '
                f'with {threads} threads')
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        # map keeps task order: p index major, replicate minor
        records = list(pool.map(lambda task: run_trial(spec, *task), tasks))
    summaries = summarize(records)
    for summary in summaries:
        logger.info(f'p={summary.p}: mean r_f={summary.mean_r_f} '
                    f'stderr={summary.std_error} tally={summary.tally}')
    return SweepResult(records, summaries)


def write_sweep_csv(records: Sequence[RunRecord], stream: TextIO):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.to_row())


def read_sweep_csv(stream: TextIO) -> List[RunRecord]:
    """Parse sweep CSV rows.

    Raises:
        ScheduleError: If the header or a row does not match the sweep schema.
    """
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != CSV_HEADER:
        raise ScheduleError(f'Expected header {",".join(CSV_HEADER)}, got {header}')
    records = []
    for line, row in enumerate(reader, start=2):
        if len(row) != len(CSV_HEADER):
            raise ScheduleError(f'Line {line}: expected {len(CSV_HEADER)} fields')
        try:
            p, n, rep, seed, r_f, rounds, status = row
            records.append(RunRecord(
                float(p), int(n), int(rep), int(seed),
                Fraction(r_f) if r_f else None, int(rounds), status,
            ))
        except ValueError as e:
            raise ScheduleError(f'Line {line}: {e}') from e
    return records
