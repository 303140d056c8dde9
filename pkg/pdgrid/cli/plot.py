# pdgrid/cli/plot.py
"""SVG plots of sweep results with theory curves overlaid."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from pdgrid.errors import InvalidParams, ScheduleError  # noqa: E402
from pdgrid.montecarlo.sweep import read_sweep_csv, summarize  # noqa: E402
from pdgrid.montecarlo.theory import TheoryCurve, theory_curve  # noqa: E402

logger = logging.getLogger(__name__)

# Fixed salt and no date keep the SVG bytes reproducible.
SVG_RC = {
    'svg.hashsalt': 'pdgrid',
    'svg.fonttype': 'path',
    'font.family': 'DejaVu Sans',
    'axes.unicode_minus': False,
}
CURVE_POINTS = 200


@dataclass(frozen=True)
class PlotSpec:
    input_csv: Path
    output: Path
    curves: Tuple[TheoryCurve, ...] = ()
    x_range: Optional[Tuple[float, float]] = None
    y_range: Optional[Tuple[float, float]] = None
    title: str = field(default='Final cooperator density')


def _curve_values(curve: TheoryCurve, ps: Sequence[float], n: int) -> np.ndarray:
    try:
        return np.array([theory_curve(curve, p, n) for p in ps])
    except InvalidParams as e:
        raise ScheduleError(f'{curve.value} is undefined on the data: {e}') from e


def render_plot(spec: PlotSpec) -> Path:
    """Scatter per-p mean r_f from a sweep CSV and overlay theory curves.

    Raises:
        ScheduleError: If the CSV is empty, does not match the sweep schema
            or a curve cannot be evaluated at a data point. No file is
            written in that case.
    """
    with open(spec.input_csv, newline='') as stream:
        records = read_sweep_csv(stream)
    summaries = [s for s in summarize(records) if s.mean_r_f is not None]
    if not summaries:
        raise ScheduleError(f'{spec.input_csv} holds no stable trials to plot')

    ps = np.array([s.p for s in summaries])
    means = np.array([s.mean_r_f for s in summaries])
    errors = np.array([s.std_error for s in summaries])
    n = summaries[0].n
    for curve in spec.curves:
        _curve_values(curve, ps, n)
    lo, hi = spec.x_range or (ps.min(), ps.max())
    grid = np.linspace(lo, hi, CURVE_POINTS)
    overlays = [(curve, _curve_values(curve, grid, n)) for curve in spec.curves]

    with matplotlib.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.errorbar(ps, means, yerr=errors, fmt='o', markersize=3, color='black',
                    label=f'simulation (n={n})')
        for curve, values in overlays:
            ax.plot(grid, values, label=curve.value)
        if spec.x_range:
            ax.set_xlim(*spec.x_range)
        if spec.y_range:
            ax.set_ylim(*spec.y_range)
        ax.set_xlabel('p')
        ax.set_ylabel('r_f')
        ax.set_title(spec.title)
        ax.grid(True, alpha=0.3)
        ax.legend(loc='best', fontsize=8)
        fig.savefig(spec.output, format='svg', metadata={'Date': None})
        plt.close(fig)

    logger.info(f'Wrote {spec.output} ({len(summaries)} points, {len(overlays)} curves)')
    return Path(spec.output)
