"""Finite-size data collapse of derivative curves and the ν that minimizes its spread.

Each size is mapped to x = N^{1/ν}(λ - λm) and

    y = ∂C(N, λ) - ∂C(N, λ0) + Q∞ · ln(N^{1/ν} |λ0 - λm|),

where Q∞ (``amplitude``) is the infinite-chain log prefactor. The last term
absorbs the N-dependence of the reference value at the non-critical λ0, so
y = Q(x) + const for every N at the right ν.

The residual is the mean variance across sizes on a common x grid inside
|x| <= ``x_window``. The reported ``spread`` is its square root divided by
the dynamic range of y over every sample of every size, the full extent of
the collapsed curves from the reference coupling to the deepest minimum.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping

import numpy as np
from scipy.optimize import minimize_scalar

from .types import CollapseResult, DerivativeCurve, Extremum, NuFit, ScalingError, ScalingErrorKind

logger = logging.getLogger(__name__)

DEFAULT_LAMBDA_0 = 0.5
DEFAULT_X_WINDOW = 5.0
COMMON_GRID_POINTS = 201
NU_BOUNDS = (0.5, 2.0)
NU_XATOL = 1e-3
FLAT_TOLERANCE = 1e-12
MIN_COLLAPSE_SIZES = 3
# Residual assigned to trial ν values whose scaling windows do not overlap.
_NO_OVERLAP_PENALTY = 1e6


def _center(value: float | Extremum) -> float:
    return float(value.lam) if isinstance(value, Extremum) else float(value)


def _reference_index(curve: DerivativeCurve, lambda_0: float, n: int) -> int:
    hits = np.flatnonzero(np.isclose(curve.lambda_grid, lambda_0, rtol=0.0, atol=1e-12))
    if hits.size == 0:
        raise ScalingError(
            ScalingErrorKind.REFERENCE_NOT_SAMPLED,
            f"N={n}: reference coupling lambda_0={lambda_0:g} is not on the grid",
        )
    return int(hits[0])


def collapse(
    dcurves: Mapping[int, DerivativeCurve],
    lambda_m: Mapping[int, float | Extremum],
    lambda_0: float,
    nu: float,
    *,
    amplitude: float = 0.0,
    x_window: float = DEFAULT_X_WINDOW,
    grid_points: int = COMMON_GRID_POINTS,
) -> CollapseResult:
    """Rescale every curve and measure the vertical spread on a common x grid."""
    transformed: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    scatter_rows: list[np.ndarray] = []
    y_low, y_high = math.inf, -math.inf
    for n in sorted(dcurves):
        curve = dcurves[n]
        center = _center(lambda_m[n])
        ref = _reference_index(curve, lambda_0, n)
        scale = float(n) ** (1.0 / nu)
        x = scale * (curve.lambda_grid - center)
        y = curve.values - curve.values[ref]
        if amplitude:
            y = y + amplitude * math.log(scale * abs(lambda_0 - center))
        y_low, y_high = min(y_low, float(np.min(y))), max(y_high, float(np.max(y)))
        inside = np.abs(x) <= x_window
        inside[ref] = False
        if np.count_nonzero(inside) < 2:
            raise ScalingError(
                ScalingErrorKind.NO_OVERLAP,
                f"N={n}: fewer than two samples with |x| <= {x_window:g} at nu={nu:.4g}",
            )
        order = np.argsort(x[inside])
        xs, ys = x[inside][order], y[inside][order]
        transformed[n] = (xs, ys)
        scatter_rows.append(np.column_stack([xs, ys, np.full(xs.size, float(n))]))

    lo = max(xs[0] for xs, _ in transformed.values())
    hi = min(xs[-1] for xs, _ in transformed.values())
    if not lo < hi:
        raise ScalingError(
            ScalingErrorKind.NO_OVERLAP,
            f"rescaled ranges do not overlap at nu={nu:.4g}",
        )
    # asinh spacing: dense near x = 0, logarithmic in the tails.
    common = np.sinh(np.linspace(math.asinh(lo), math.asinh(hi), grid_points))
    stacked = np.vstack([np.interp(common, xs, ys) for xs, ys in transformed.values()])
    residual = float(np.mean(np.var(stacked, axis=0)))
    mean_curve = stacked.mean(axis=0)
    span = y_high - y_low
    spread = math.sqrt(residual) / span if span > 0.0 else 0.0
    return CollapseResult(
        nu=float(nu),
        residual=residual,
        spread=spread,
        dynamic_range=span,
        q_samples=np.column_stack([common, mean_curve]),
        scatter=np.vstack(scatter_rows),
        sizes=tuple(sorted(transformed)),
    )


def collapse_objective(
    dcurves: Mapping[int, DerivativeCurve],
    lambda_m: Mapping[int, float | Extremum],
    lambda_0: float,
    *,
    amplitude: float = 0.0,
    x_window: float = DEFAULT_X_WINDOW,
):
    """ν ↦ collapse residual, with a large constant where the windows stop overlapping."""

    def objective(nu: float) -> float:
        try:
            return collapse(
                dcurves, lambda_m, lambda_0, nu, amplitude=amplitude, x_window=x_window
            ).residual
        except ScalingError as exc:
            if exc.kind is not ScalingErrorKind.NO_OVERLAP:
                raise
            return _NO_OVERLAP_PENALTY

    return objective


def _curvature_stderr(objective, nu: float, best: float, bounds: tuple[float, float]) -> float:
    """Half-width at which a quadratic fit of the residual doubles."""
    delta = 0.05
    for _ in range(6):
        left, right = nu - delta, nu + delta
        if left >= bounds[0] and right <= bounds[1]:
            r_left, r_right = objective(left), objective(right)
            if max(r_left, r_right) < _NO_OVERLAP_PENALTY:
                curvature = (r_left - 2.0 * best + r_right) / (delta * delta)
                if curvature > 0.0:
                    return math.sqrt(2.0 * max(best, 0.0) / curvature)
                return math.inf
        delta *= 0.5
    return math.inf


def fit_nu(
    dcurves: Mapping[int, DerivativeCurve],
    lambda_m: Mapping[int, float | Extremum],
    lambda_0: float,
    *,
    amplitude: float = 0.0,
    x_window: float = DEFAULT_X_WINDOW,
    bounds: tuple[float, float] = NU_BOUNDS,
    xatol: float = NU_XATOL,
) -> NuFit:
    """Bounded one-dimensional minimization of the collapse residual over ν."""
    if len(dcurves) < MIN_COLLAPSE_SIZES:
        raise ScalingError(
            ScalingErrorKind.TOO_FEW_SIZES,
            f"fitting nu needs at least {MIN_COLLAPSE_SIZES} sizes, got {len(dcurves)}",
        )
    objective = collapse_objective(
        dcurves, lambda_m, lambda_0, amplitude=amplitude, x_window=x_window
    )
    trial_nus = (bounds[0], 0.5 * (bounds[0] + bounds[1]), bounds[1])
    trial_residuals = [objective(nu) for nu in trial_nus]
    if max(trial_residuals) - min(trial_residuals) < FLAT_TOLERANCE:
        raise ScalingError(
            ScalingErrorKind.FLAT_OBJECTIVE,
            f"collapse residual is flat across nu in [{bounds[0]:g}, {bounds[1]:g}]",
        )
    result = minimize_scalar(objective, bounds=bounds, method="bounded", options={"xatol": xatol})
    nu = float(result.x)
    best = float(result.fun)
    if min(nu - bounds[0], bounds[1] - nu) < 2.0 * xatol:
        logger.warning("nu fit %.4f sits on the search bound %s", nu, bounds)
    stderr = _curvature_stderr(objective, nu, best, bounds)
    logger.info("nu fit %.4f +/- %.4f (residual %.3e)", nu, stderr, best)
    return NuFit(nu=nu, stderr=stderr, residual=best)
