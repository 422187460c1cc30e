"""Bundled magnetization and two-point functions for one parameter point."""

from __future__ import annotations

import logging
import math

from src.model import Axis, ModelParams

from .momentum import finite_g_function
from .quadrature import infinite_g
from .toeplitz import g_window, magnetization, two_point
from .types import CorrelatorSet, GFunction, GSource, SolverError, SolverErrorKind

logger = logging.getLogger(__name__)


def default_r_max(gamma: float) -> int:
    return max(3, math.ceil(2.0 / gamma) + 2)


def largest_r(params: ModelParams) -> int | None:
    """Largest separation allowed on a finite ring, None for the infinite chain."""
    if params.is_infinite:
        return None
    return (int(params.n) - 1) // 2  # type: ignore[arg-type]


def resolve_r_max(params: ModelParams, r_max: int | None) -> int:
    """Check an explicit ``r_max`` or derive the default for ``params``."""
    limit = largest_r(params)
    if r_max is None:
        r_max = default_r_max(params.gamma)
        return r_max if limit is None else min(r_max, limit)
    if r_max < 1:
        raise SolverError(SolverErrorKind.R_MAX_TOO_LARGE, f"r_max must be at least 1, got {r_max}")
    if limit is not None and r_max > limit:
        raise SolverError(
            SolverErrorKind.R_MAX_TOO_LARGE,
            f"r_max={r_max} must stay below N/2 for N={params.n}",
        )
    return r_max


def infinite_g_function(params: ModelParams, window: range) -> GFunction:
    values = {n: infinite_g(params.gamma, params.lam, n) for n in window}
    return GFunction(values=values, source=GSource.INFINITE_QUADRATURE, params=params)


def g_function(params: ModelParams, r_max: int) -> GFunction:
    window = g_window(r_max)
    if params.is_infinite:
        return infinite_g_function(params, window)
    return finite_g_function(params, window)


def correlators(params: ModelParams, r_max: int | None = None) -> CorrelatorSet:
    """⟨σᶻ⟩ and the diagonal two-point functions for r = 1..r_max from one G window."""
    r_max = resolve_r_max(params, r_max)
    g = g_function(params, r_max)
    separations = range(1, r_max + 1)
    return CorrelatorSet(
        mz=magnetization(g),
        gxx={r: two_point(g, Axis.X, r) for r in separations},
        gyy={r: two_point(g, Axis.Y, r) for r in separations},
        gzz={r: two_point(g, Axis.Z, r) for r in separations},
        params=params,
    )
