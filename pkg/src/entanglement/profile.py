"""Concurrence as a function of λ and separation; range and total concurrence."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from src.fermions import correlators, default_r_max, largest_r, resolve_r_max
from src.model import ModelParams

from .concurrence import concurrence
from .density import assemble_rdm
from .types import (
    ConcurrenceCurve,
    ConcurrenceMethod,
    EntanglementError,
    EntanglementErrorKind,
)

logger = logging.getLogger(__name__)

RANGE_THRESHOLD = 1e-8
TAIL_TOLERANCE = 1e-10
# Hard stop for the tail search of the total concurrence on the infinite chain.
MAX_TAIL_R = 96

# Profiles feed λ-derivatives, so they use the closed form that is smooth in ρ.
PROFILE_METHOD = ConcurrenceMethod.X_STATE


def _grid(lambda_grid: Sequence[float] | np.ndarray) -> np.ndarray:
    grid = np.asarray(lambda_grid, dtype=float).ravel()
    if grid.size == 0 or np.any(np.diff(grid) <= 0.0):
        raise EntanglementError(
            EntanglementErrorKind.GRID_NOT_INCREASING,
            "lambda grid must be non-empty and strictly increasing",
        )
    return grid


def concurrences_at(
    params: ModelParams,
    r_max: int | None = None,
    *,
    method: ConcurrenceMethod | str = PROFILE_METHOD,
) -> dict[int, float]:
    """C(r) for r = 1..r_max at the coupling carried by ``params``."""
    corr = correlators(params, r_max)
    return {r: concurrence(assemble_rdm(corr, r), method) for r in range(1, corr.r_max + 1)}


def concurrence_at(
    params: ModelParams,
    r: int,
    *,
    method: ConcurrenceMethod | str = PROFILE_METHOD,
) -> float:
    """C(r) alone; evaluates only the G window that ``r`` needs."""
    return concurrences_at(params, r, method=method)[r]


def concurrence_profile(
    params: ModelParams,
    r_max: int | None,
    lambda_grid: Sequence[float] | np.ndarray,
    *,
    method: ConcurrenceMethod | str = PROFILE_METHOD,
) -> ConcurrenceCurve:
    """C(r), r = 1..r_max, at every grid coupling; ``params.lam`` is ignored."""
    grid = _grid(lambda_grid)
    r_max = resolve_r_max(params, r_max)
    table = np.zeros((r_max, grid.size))
    for column, lam in enumerate(grid):
        values = concurrences_at(params.at(lam), r_max, method=method)
        for r, value in values.items():
            table[r - 1, column] = value
    logger.info(
        "profile N=%s gamma=%g: %d couplings, r_max=%d", params.size, params.gamma, grid.size, r_max
    )
    return ConcurrenceCurve(
        size=params.size,
        gamma=params.gamma,
        lambda_grid=grid,
        c_values={r: table[r - 1] for r in range(1, r_max + 1)},
    )


def range_from_curve(curve: ConcurrenceCurve, threshold: float = RANGE_THRESHOLD) -> int:
    """Largest r whose concurrence exceeds ``threshold`` somewhere on the grid."""
    xi = 0
    for r, values in curve.c_values.items():
        if np.max(values) > threshold:
            xi = max(xi, r)
    if xi and xi == curve.r_max:
        logger.warning(
            "entanglement reaches r_max=%d at gamma=%g; the range may be larger",
            curve.r_max,
            curve.gamma,
        )
    return xi


def _tail_peak(curve: ConcurrenceCurve) -> float:
    """Largest concurrence on the grid at the two farthest separations."""
    last = curve.r_max
    return max(float(np.max(curve.c_values[r])) for r in range(max(1, last - 1), last + 1))


def range_profile(
    params: ModelParams,
    lambda_grid: Sequence[float] | np.ndarray,
    threshold: float = RANGE_THRESHOLD,
    *,
    r_max: int | None = None,
) -> ConcurrenceCurve:
    """Profile wide enough in r to hold the whole entanglement range.

    Without an explicit ``r_max`` the window starts at the default and doubles
    until C stays at or below ``threshold`` at the two farthest separations,
    or the ring (or MAX_TAIL_R) runs out. An explicit ``r_max`` is used as is.
    """
    curve = concurrence_profile(params, r_max, lambda_grid)
    if r_max is not None:
        return curve
    limit = largest_r(params)
    cap = MAX_TAIL_R if limit is None else limit
    while _tail_peak(curve) > threshold and curve.r_max < cap:
        curve = concurrence_profile(params, min(2 * curve.r_max, cap), lambda_grid)
    return curve


def entanglement_range(
    params: ModelParams,
    lambda_grid: Sequence[float] | np.ndarray,
    threshold: float = RANGE_THRESHOLD,
    *,
    r_max: int | None = None,
) -> int:
    """ξE: the farthest separation at which two spins are entangled on the grid."""
    return range_from_curve(range_profile(params, lambda_grid, threshold, r_max=r_max), threshold)


def total_concurrence(
    params: ModelParams,
    lam: float | None = None,
    *,
    tail_tolerance: float = TAIL_TOLERANCE,
) -> float:
    """Σ_r C(r) with r extended until the last terms drop below ``tail_tolerance``."""
    point = params if lam is None else params.at(lam)
    limit = largest_r(point)
    cap = MAX_TAIL_R if limit is None else limit
    r_max = min(default_r_max(point.gamma), cap)
    while True:
        values = concurrences_at(point, r_max)
        tail = max(values[r] for r in range(max(1, r_max - 1), r_max + 1))
        if tail <= tail_tolerance or r_max >= cap:
            if tail > tail_tolerance:
                logger.warning(
                    "total concurrence tail %.3e above tolerance at r_max=%d", tail, r_max
                )
            return float(sum(values.values()))
        r_max = min(2 * r_max, cap)
