"""``sweep``: correlators, concurrences and their λ-derivatives on an (N, λ) grid."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from src.entanglement import assemble_rdm, concurrence, concurrence_at
from src.entanglement.profile import PROFILE_METHOD
from src.fermions import correlators, default_r_max, largest_r
from src.model import CRITICAL, FiniteOdd, ModelParams, validate_lambda
from src.scaling import critical_grid, effective_step, point_derivative

from .types import (
    GridKind,
    PipelineError,
    PipelineErrorKind,
    ProgressCallback,
    ProgressStatus,
    RunConfig,
    Stage,
    Table,
    emit,
)

logger = logging.getLogger(__name__)

# Smallest offset from λc on geometric grids.
GEOMETRIC_MIN_OFFSET = 1e-4


def _size_key(size: object) -> float:
    return float(size.n) if isinstance(size, FiniteOdd) else float("inf")


def sweep_grid(config: RunConfig) -> np.ndarray:
    """Sorted couplings: explicit ``lambdas``, a linear grid, or geometric about λc."""
    if config.lambdas is not None:
        grid = np.asarray(config.lambdas, dtype=float)
    elif config.grid_kind is GridKind.LINEAR:
        grid = np.linspace(config.lambda_min, config.lambda_max, config.grid_points)
    else:
        center = CRITICAL.lambda_c
        reach = max(abs(config.lambda_min - center), abs(config.lambda_max - center))
        if reach <= GEOMETRIC_MIN_OFFSET:
            grid = np.linspace(config.lambda_min, config.lambda_max, config.grid_points)
        else:
            grid = critical_grid(
                center,
                min_offset=GEOMETRIC_MIN_OFFSET,
                max_offset=reach,
                points_per_side=max(0, (config.grid_points - 1) // 2),
                extra=(config.lambda_0, config.lambda_min, config.lambda_max),
            )
            grid = grid[(grid >= config.lambda_min) & (grid <= config.lambda_max)]
    grid = np.unique(np.round(grid, 14))
    if grid.size == 0:
        raise PipelineError(PipelineErrorKind.CONFIG_INVALID, "the lambda grid is empty")
    for lam in grid:
        validate_lambda(float(lam))
    return grid


def sweep_r_max(config: RunConfig) -> int:
    """Common r_max for every row; explicit values are checked per size later."""
    if config.r_max is not None:
        return config.r_max
    r_max = max(default_r_max(gamma) for gamma in config.gammas)
    for size in config.sizes or ():
        limit = largest_r(ModelParams(size=size, gamma=config.gamma, lam=0.0))
        if limit is not None:
            r_max = min(r_max, limit)
    return r_max


def sweep_columns(r_max: int) -> tuple[str, ...]:
    separations = range(1, r_max + 1)
    columns = ["N", "gamma", "lambda", "mz"]
    for prefix in ("gxx", "gyy", "gzz"):
        columns.extend(f"{prefix}_{r}" for r in separations)
    columns.extend(f"C_{r}" for r in separations)
    columns.append("dC_1")
    if r_max >= 2:
        columns.append("d2C_2")
    return tuple(columns)


def evaluate_point(params: ModelParams, r_max: int, step: float) -> tuple[object, ...]:
    """One output row at ``params``."""
    corr = correlators(params, r_max)
    separations = range(1, r_max + 1)
    c_values = {r: concurrence(assemble_rdm(corr, r), PROFILE_METHOD) for r in separations}
    lam = params.lam
    h = effective_step(params.size, lam, step)

    def c_of(r: int):
        return lambda x: concurrence_at(params.at(x), r)

    row: list[object] = [params.size, params.gamma, lam, corr.mz]
    row.extend(corr.gxx[r] for r in separations)
    row.extend(corr.gyy[r] for r in separations)
    row.extend(corr.gzz[r] for r in separations)
    row.extend(c_values[r] for r in separations)
    row.append(point_derivative(c_of(1), lam, 1, h, f0=c_values[1]))
    if r_max >= 2:
        row.append(point_derivative(c_of(2), lam, 2, h, f0=c_values[2]))
    return tuple(row)


def run_sweep(config: RunConfig, *, on_progress: ProgressCallback | None = None) -> Table:
    if not config.sizes:
        raise PipelineError(PipelineErrorKind.CONFIG_INVALID, "sweep needs at least one size")
    grid = sweep_grid(config)
    r_max = sweep_r_max(config)
    points = [
        ModelParams(size=size, gamma=gamma, lam=float(lam))
        for gamma in sorted(set(config.gammas))
        for size in sorted(set(config.sizes), key=_size_key)
        for lam in grid
    ]
    detail = f"{len(points)} points, r_max={r_max}, threads={config.threads}"
    emit(on_progress, Stage.EVALUATE, ProgressStatus.STARTED, detail)
    logger.info("sweep: %s", detail)
    try:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(lambda p: evaluate_point(p, r_max, config.step), points))
    except Exception as exc:
        emit(on_progress, Stage.EVALUATE, ProgressStatus.FAILED, str(exc))
        raise
    emit(on_progress, Stage.EVALUATE, ProgressStatus.FINISHED, f"{len(rows)} rows")
    return Table(
        columns=sweep_columns(r_max),
        rows=rows,
        summary={"points": len(rows), "r_max": r_max},
    )
