"""End-to-end scaling analysis: grids, infinite-chain slopes, per-size minima, collapse."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from src.entanglement import concurrence_at
from src.model import CRITICAL, INFINITE, FiniteOdd, ModelParams, validate_gamma, validate_size

from .collapse import DEFAULT_LAMBDA_0, DEFAULT_X_WINDOW, collapse, fit_nu
from .derivative import (
    DEFAULT_STEP,
    REFINE_XATOL,
    derivative_on_grid,
    effective_step,
    find_minimum,
    point_derivative,
)
from .fits import fit_log, fit_power, prefactor_ratio_nu
from .types import (
    C2Report,
    DerivativeCurve,
    Extremum,
    LogFit,
    ScalingError,
    ScalingErrorKind,
    ScalingReport,
)

logger = logging.getLogger(__name__)

POINTS_PER_SIDE = 60
MIN_OFFSET = 1e-4
MAX_OFFSET = 0.5
# Fit windows in |λ - λc| for the infinite-chain log prefactors.
FIRST_DERIVATIVE_WINDOW = (1e-5, 1e-2)
SECOND_DERIVATIVE_WINDOW = (1e-4, 1e-2)
SLOPE_POINTS = 25
PEAK_WINDOW = (0.9, 1.1)
PEAK_COARSE_POINTS = 41

ProgressHook = Callable[[str], None]


def critical_grid(
    center: float = CRITICAL.lambda_c,
    *,
    min_offset: float = MIN_OFFSET,
    max_offset: float = MAX_OFFSET,
    points_per_side: int = POINTS_PER_SIDE,
    extra: Iterable[float] = (DEFAULT_LAMBDA_0,),
    lower_bound: float = 0.0,
) -> np.ndarray:
    """Geometric spacing in |λ - center| on both sides, plus ``extra`` couplings."""
    offsets = np.geomspace(min_offset, max_offset, points_per_side)
    grid = np.concatenate([center - offsets, [center], center + offsets, list(extra)])
    grid = grid[grid >= lower_bound]
    return np.unique(np.round(grid, 14))


def infinite_log_slope(
    gamma: float,
    *,
    r: int = 1,
    order: int = 1,
    window: tuple[float, float] | None = None,
    side: int = -1,
    points: int = SLOPE_POINTS,
    step: float = DEFAULT_STEP,
) -> LogFit:
    """Prefactor of ln|λ - λc| in ∂λᵏ C(r) of the infinite chain.

    ``side`` is -1 (below λc), +1 (above) or 0 (both sides pooled).
    """
    if window is None:
        window = FIRST_DERIVATIVE_WINDOW if order == 1 else SECOND_DERIVATIVE_WINDOW
    offsets = np.geomspace(window[0], window[1], points)
    sides = (-1, 1) if side == 0 else (side,)
    params = ModelParams(size=INFINITE, gamma=validate_gamma(gamma), lam=CRITICAL.lambda_c)

    def c_of(lam: float) -> float:
        return concurrence_at(params.at(lam), r)

    xs: list[float] = []
    ys: list[float] = []
    for sign in sides:
        for offset in offsets:
            lam = CRITICAL.lambda_c + sign * float(offset)
            h = effective_step(INFINITE, lam, step)
            xs.append(float(offset))
            ys.append(point_derivative(c_of, lam, order, h))
    fit = fit_log(xs, ys)
    logger.info(
        "infinite chain gamma=%g d^%dC(%d): slope %.6f (rms %.2e)", gamma, order, r, fit.slope, fit.residual
    )
    return fit


def _finite(size: object) -> FiniteOdd:
    parsed = validate_size(size)
    if not isinstance(parsed, FiniteOdd):
        raise ValueError("scaling families are built from finite sizes only")
    return parsed


def derivative_family(
    gamma: float,
    sizes: Sequence[int],
    *,
    r: int = 1,
    order: int = 1,
    lambda_0: float = DEFAULT_LAMBDA_0,
    step: float = DEFAULT_STEP,
    points_per_side: int = POINTS_PER_SIDE,
    references: Iterable[float] = (),
    on_progress: ProgressHook | None = None,
) -> tuple[dict[int, DerivativeCurve], dict[int, Extremum]]:
    """Per-size derivative curves sampled about each size's own minimum.

    A first pass about λc locates the minimum; the second pass resamples about
    it so the scaling window is covered evenly on both sides. ``lambda_0`` and
    any further ``references`` are added to both grids.
    """
    gamma = validate_gamma(gamma)
    extra = (lambda_0, *references)
    curves: dict[int, DerivativeCurve] = {}
    minima: dict[int, Extremum] = {}
    for size in sizes:
        finite = _finite(size)
        params = ModelParams(size=finite, gamma=gamma, lam=CRITICAL.lambda_c)
        coarse = derivative_on_grid(
            params, r, order, critical_grid(points_per_side=points_per_side, extra=extra), step
        )
        minimum = find_minimum(coarse)
        curves[finite.n] = derivative_on_grid(
            params,
            r,
            order,
            critical_grid(minimum.lam, points_per_side=points_per_side, extra=extra),
            step,
        )
        minima[finite.n] = minimum
        if on_progress is not None:
            on_progress(f"N={finite.n} lambda_m={minimum.lam:.8f}")
    return curves, minima


def report_from_curves(
    dcurves: Mapping[int, DerivativeCurve],
    *,
    gamma: float,
    lambda_0: float = DEFAULT_LAMBDA_0,
    infinite_slope: LogFit | None = None,
    minima: Mapping[int, Extremum] | None = None,
    x_window: float = DEFAULT_X_WINDOW,
) -> ScalingReport:
    """Assemble every fit the inputs support; unsupported ones are listed in ``omitted``."""
    if not dcurves:
        raise ScalingError(ScalingErrorKind.TOO_FEW_SIZES, "no derivative curves given")
    first = next(iter(dcurves.values()))
    omitted: dict[str, str] = {}
    if minima is None:
        minima = {n: find_minimum(curve) for n, curve in dcurves.items()}
    sizes = sorted(minima)
    minimum_values = [minima[n].value for n in sizes]
    shifts = [minima[n].lam - CRITICAL.lambda_c for n in sizes]

    theta = finite_slope = nu_fit = collapse_result = None
    nu_ratio: float | None = None
    try:
        theta = fit_power(sizes, shifts)
    except ScalingError as exc:
        omitted["theta"] = str(exc)
    try:
        finite_slope = fit_log(sizes, minimum_values)
    except ScalingError as exc:
        omitted["finite_slope"] = str(exc)
    if infinite_slope is None:
        omitted["infinite_slope"] = "no infinite-chain data"
    if finite_slope is not None and infinite_slope is not None:
        try:
            nu_ratio = prefactor_ratio_nu(finite_slope.slope, infinite_slope.slope)
        except ScalingError as exc:
            omitted["nu_ratio"] = str(exc)
    else:
        omitted["nu_ratio"] = "needs both finite and infinite log prefactors"

    if infinite_slope is None:
        omitted["collapse"] = omitted["nu_fit"] = "collapse needs the infinite-chain log prefactor"
    elif len(dcurves) < 3:
        omitted["collapse"] = omitted["nu_fit"] = (
            f"collapse needs at least 3 sizes, got {len(dcurves)}"
        )
    else:
        amplitude = infinite_slope.slope
        try:
            nu_fit = fit_nu(dcurves, minima, lambda_0, amplitude=amplitude, x_window=x_window)
            collapse_result = collapse(
                dcurves, minima, lambda_0, nu_fit.nu, amplitude=amplitude, x_window=x_window
            )
        except ScalingError as exc:
            omitted["collapse"] = omitted["nu_fit"] = str(exc)

    return ScalingReport(
        gamma=gamma,
        r=first.r,
        order=first.order,
        lambda_0=lambda_0,
        lambda_m_per_n=dict(minima),
        theta=theta,
        finite_slope=finite_slope,
        infinite_slope=infinite_slope,
        nu_ratio=nu_ratio,
        nu_fit=nu_fit,
        collapse=collapse_result,
        omitted=omitted,
    )


def scaling_report(
    gamma: float,
    sizes: Sequence[int],
    *,
    r: int = 1,
    order: int = 1,
    lambda_0: float = DEFAULT_LAMBDA_0,
    step: float = DEFAULT_STEP,
    points_per_side: int = POINTS_PER_SIDE,
    x_window: float = DEFAULT_X_WINDOW,
    on_progress: ProgressHook | None = None,
) -> ScalingReport:
    """Minimum tracking, log and power fits, prefactor ratio and ν collapse for ∂λᵏC(r)."""
    curves, minima = derivative_family(
        gamma,
        sizes,
        r=r,
        order=order,
        lambda_0=lambda_0,
        step=step,
        points_per_side=points_per_side,
        on_progress=on_progress,
    )
    slope = infinite_log_slope(gamma, r=r, order=order, step=step)
    return report_from_curves(
        curves,
        gamma=gamma,
        lambda_0=lambda_0,
        infinite_slope=slope,
        minima=minima,
        x_window=x_window,
    )


def concurrence_peak(
    params: ModelParams,
    r: int = 2,
    *,
    window: tuple[float, float] = PEAK_WINDOW,
    points: int = PEAK_COARSE_POINTS,
) -> Extremum:
    """Location and height of the maximum of C(r) inside ``window``."""
    grid = np.linspace(window[0], window[1], points)
    values = np.array([concurrence_at(params.at(lam), r) for lam in grid])
    idx = int(np.argmax(values))
    lo = float(grid[max(idx - 1, 0)])
    hi = float(grid[min(idx + 1, grid.size - 1)])
    result = minimize_scalar(
        lambda lam: -concurrence_at(params.at(lam), r),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": REFINE_XATOL},
    )
    if result.success and -float(result.fun) >= values[idx]:
        return Extremum(lam=float(result.x), value=-float(result.fun))
    return Extremum(lam=float(grid[idx]), value=float(values[idx]))


def maxima_decreasing(peaks: Mapping[int, Extremum]) -> bool:
    heights = [peaks[n].value for n in sorted(peaks)]
    return all(later < earlier for earlier, later in zip(heights, heights[1:]))


def c2_analysis(
    gamma: float,
    sizes: Sequence[int],
    *,
    lambda_0: float = DEFAULT_LAMBDA_0,
    step: float = DEFAULT_STEP,
    points_per_side: int = POINTS_PER_SIDE,
    x_window: float = DEFAULT_X_WINDOW,
    on_progress: ProgressHook | None = None,
) -> C2Report:
    """Peak of C(2) per size plus the scaling of ∂λ²C(2)."""
    gamma = validate_gamma(gamma)
    peaks: dict[int, Extremum] = {}
    for size in sizes:
        finite = _finite(size)
        peaks[finite.n] = concurrence_peak(ModelParams(size=finite, gamma=gamma, lam=1.0), 2)
        if on_progress is not None:
            on_progress(f"N={finite.n} C(2) peak at {peaks[finite.n].lam:.6f}")
    report = scaling_report(
        gamma,
        sizes,
        r=2,
        order=2,
        lambda_0=lambda_0,
        step=step,
        points_per_side=points_per_side,
        x_window=x_window,
        on_progress=on_progress,
    )
    return C2Report(peaks=peaks, maxima_decreasing=maxima_decreasing(peaks), scaling=report)
