"""``range``: entanglement range ξE and total concurrence per anisotropy."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from src.entanglement import range_from_curve, range_profile, total_concurrence
from src.entanglement.profile import TAIL_TOLERANCE
from src.model import CRITICAL, ChainSize, FiniteOdd, ModelParams
from src.scaling import ScalingError, fit_loglog

from .sweep import sweep_grid
from .types import ProgressCallback, ProgressStatus, RunConfig, Stage, Table, emit

logger = logging.getLogger(__name__)

COLUMNS = (
    "gamma",
    "N",
    "xi_E",
    "r_max",
    "total_concurrence",
    "lambda_at_max",
    "total_at_critical",
)


def scan_point(params: ModelParams, grid: np.ndarray, config: RunConfig) -> tuple[object, ...]:
    """ξE, the largest total concurrence on the grid, and the total at λc."""
    curve = range_profile(params, grid, config.threshold, r_max=config.r_max)
    xi = range_from_curve(curve, config.threshold)
    table = np.vstack([curve.c_values[r] for r in sorted(curve.c_values)])
    totals = table.sum(axis=0)
    tail = table[-2:].max(axis=0)
    for idx in np.flatnonzero(tail > TAIL_TOLERANCE):
        # The profile window cut the sum short here; extend r until the tail is negligible.
        totals[idx] = total_concurrence(params, float(grid[idx]))
    peak = int(np.argmax(totals))
    at_critical = total_concurrence(params, CRITICAL.lambda_c)
    logger.info(
        "gamma=%g N=%s: xi_E=%d, max total %.6f at lambda=%.6g, total at lambda_c %.6f",
        params.gamma,
        params.size,
        xi,
        totals[peak],
        grid[peak],
        at_critical,
    )
    return (
        params.gamma,
        params.size,
        xi,
        curve.r_max,
        float(totals[peak]),
        float(grid[peak]),
        at_critical,
    )


def _size_key(size: ChainSize) -> float:
    return float(size.n) if isinstance(size, FiniteOdd) else float("inf")


def run_range(config: RunConfig, *, on_progress: ProgressCallback | None = None) -> Table:
    grid = sweep_grid(config)
    sizes = sorted(set(config.sizes or ()), key=_size_key)
    points = [
        ModelParams(size=size, gamma=gamma, lam=float(grid[0]))
        for gamma in sorted(set(config.gammas), reverse=True)
        for size in sizes
    ]
    emit(on_progress, Stage.EVALUATE, ProgressStatus.STARTED, f"{len(points)} (gamma, N) pairs")
    try:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(lambda p: scan_point(p, grid, config), points))
    except Exception as exc:
        emit(on_progress, Stage.EVALUATE, ProgressStatus.FAILED, str(exc))
        raise
    emit(on_progress, Stage.EVALUATE, ProgressStatus.FINISHED, f"{len(rows)} rows")

    emit(on_progress, Stage.FIT, ProgressStatus.STARTED, "xi_E against gamma")
    summary: dict[str, object] = {}
    for size in sizes:
        selected = [row for row in rows if row[1] == size]
        by_gamma = sorted(selected, key=lambda row: row[0])
        increasing = all(
            later[6] >= earlier[6] for earlier, later in zip(by_gamma, by_gamma[1:])
        )
        summary[f"critical_total_increasing_N{size}"] = "yes" if increasing else "no"
        key = f"xi_slope_N{size}"
        try:
            fit = fit_loglog([row[0] for row in selected], [row[2] for row in selected])
        except ScalingError as exc:
            summary[key] = "omitted"
            summary[f"{key}_reason"] = str(exc)
            continue
        summary[key] = fit.slope
        summary[f"{key}_stderr"] = fit.stderr
    emit(on_progress, Stage.FIT, ProgressStatus.FINISHED, None)
    return Table(columns=COLUMNS, rows=rows, summary=summary)
