"""λ-derivatives of concurrence by Richardson-refined finite differences."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from src.entanglement import ConcurrenceCurve, concurrence_at
from src.model import CRITICAL, ChainSize, FiniteOdd, ModelParams

from .types import DerivativeCurve, Extremum, PointEvaluator, ScalingError, ScalingErrorKind

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-4
MIN_STEP = 1e-12
# Smallest sample variation across a stencil that still carries a derivative.
NOISE_FLOOR = 1e-12
# Finite rings round off the singularity over a width ~1/N; the step stays well inside it.
FINITE_STEP_FRACTION = 0.1
# On the infinite chain the step stays a fixed fraction of the distance to λc.
CRITICAL_STEP_FRACTION = 0.1
REFINE_XATOL = 1e-7


def effective_step(size: ChainSize, lam: float, step: float = DEFAULT_STEP) -> float:
    h = float(step)
    if isinstance(size, FiniteOdd):
        h = min(h, FINITE_STEP_FRACTION / size.n)
    else:
        distance = abs(lam - CRITICAL.lambda_c)
        if distance > 0.0:
            h = min(h, CRITICAL_STEP_FRACTION * distance)
    if h < MIN_STEP:
        raise ScalingError(
            ScalingErrorKind.STEP_TOO_SMALL,
            f"finite-difference step {h:.3e} at lambda={lam:.12g} is below {MIN_STEP:g}",
        )
    return h


def _stencil(
    func: PointEvaluator, lam: float, order: int, h: float, f0: float | None, one_sided: bool
) -> float:
    if one_sided:
        f1, f2 = func(lam + h), func(lam + 2.0 * h)
        if order == 1:
            return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h)  # type: ignore[operator]
        f3 = func(lam + 3.0 * h)
        return (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h)  # type: ignore[operator]
    fp, fm = func(lam + h), func(lam - h)
    if order == 1:
        return (fp - fm) / (2.0 * h)
    return (fp - 2.0 * f0 + fm) / (h * h)  # type: ignore[operator]


def point_derivative(
    func: PointEvaluator,
    lam: float,
    order: int,
    step: float,
    *,
    f0: float | None = None,
) -> float:
    """One Richardson step on second-order differences with spacings h and h/2.

    Forward stencils replace central ones when λ - 2h would leave λ ≥ 0.
    A stencil on which the function is exactly constant (C clipped to zero)
    gives 0; one whose samples differ only below ``NOISE_FLOOR`` raises
    StepTooSmall.
    """
    if order not in (1, 2):
        raise ValueError(f"derivative order must be 1 or 2, got {order}")
    if step < MIN_STEP:
        raise ScalingError(
            ScalingErrorKind.STEP_TOO_SMALL,
            f"finite-difference step {step:.3e} is below {MIN_STEP:g}",
        )
    one_sided = lam - 2.0 * step < 0.0
    if f0 is None and (order == 2 or one_sided):
        f0 = func(lam)
    samples: list[float] = [] if f0 is None else [f0]

    def recorded(x: float) -> float:
        value = func(x)
        samples.append(value)
        return value

    coarse = _stencil(recorded, lam, order, step, f0, one_sided)
    fine = _stencil(recorded, lam, order, 0.5 * step, f0, one_sided)
    variation = max(samples) - min(samples)
    if variation == 0.0:
        return 0.0
    if variation < NOISE_FLOOR:
        raise ScalingError(
            ScalingErrorKind.STEP_TOO_SMALL,
            f"samples vary by {variation:.3e} across the stencil at lambda={lam:.12g} "
            f"(step {step:.3e}), below the noise floor {NOISE_FLOOR:g}",
        )
    return (4.0 * fine - coarse) / 3.0


def concurrence_derivative_evaluator(
    params: ModelParams, r: int, order: int, step: float = DEFAULT_STEP
) -> PointEvaluator:
    """λ ↦ ∂λᵏ C(r) with the size-aware step rule."""

    def c_of(lam: float) -> float:
        return concurrence_at(params.at(lam), r)

    def evaluate(lam: float) -> float:
        return point_derivative(c_of, lam, order, effective_step(params.size, lam, step))

    return evaluate


def derivative_on_grid(
    params: ModelParams,
    r: int,
    order: int,
    lambda_grid: Sequence[float] | np.ndarray,
    step: float = DEFAULT_STEP,
    *,
    c_values: np.ndarray | None = None,
) -> DerivativeCurve:
    grid = np.asarray(lambda_grid, dtype=float)

    def c_of(lam: float) -> float:
        return concurrence_at(params.at(lam), r)

    values = np.empty(grid.size)
    for idx, lam in enumerate(grid):
        f0 = None if c_values is None else float(c_values[idx])
        h = effective_step(params.size, float(lam), step)
        values[idx] = point_derivative(c_of, float(lam), order, h, f0=f0)
    logger.info("derivative order=%d r=%d N=%s over %d couplings", order, r, params.size, grid.size)
    return DerivativeCurve(
        order=order,
        lambda_grid=grid,
        values=values,
        step=float(step),
        r=r,
        size=params.size,
        evaluator=concurrence_derivative_evaluator(params, r, order, step),
    )


def derivative(
    curve: ConcurrenceCurve, r: int, order: int, step: float = DEFAULT_STEP
) -> DerivativeCurve:
    """∂λᵏ C(r) on the curve's grid, re-evaluating C at λ ± h directly."""
    grid = curve.lambda_grid
    params = ModelParams(size=curve.size, gamma=curve.gamma, lam=float(grid[0]))
    return derivative_on_grid(params, r, order, grid, step, c_values=curve.c_values.get(r))


def _parabola_vertex(x: np.ndarray, y: np.ndarray) -> tuple[float, float] | None:
    (x0, x1, x2), (y0, y1, y2) = x, y
    denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
    b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom
    c = (x1 * x2 * (x1 - x2) * y0 + x2 * x0 * (x2 - x0) * y1 + x0 * x1 * (x0 - x1) * y2) / denom
    if a <= 0.0:
        return None
    vertex = -b / (2.0 * a)
    return float(vertex), float(c - b * b / (4.0 * a))


def locate_minimum(
    grid: np.ndarray,
    values: np.ndarray,
    evaluator: PointEvaluator | None = None,
    *,
    what: str = "curve",
) -> Extremum:
    """Coarse grid minimum refined by bounded Brent search or a three-point parabola."""
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    idx = int(np.argmin(values))
    if idx == 0 or idx == grid.size - 1:
        raise ScalingError(
            ScalingErrorKind.NO_INTERIOR_MINIMUM,
            f"{what}: minimum sits at the window edge lambda={grid[idx]:.12g}",
        )
    best = Extremum(lam=float(grid[idx]), value=float(values[idx]))
    lo, hi = float(grid[idx - 1]), float(grid[idx + 1])
    if evaluator is not None:
        result = minimize_scalar(
            evaluator, bounds=(lo, hi), method="bounded", options={"xatol": REFINE_XATOL}
        )
        if result.success and float(result.fun) <= best.value:
            return Extremum(lam=float(result.x), value=float(result.fun))
        return best
    vertex = _parabola_vertex(grid[idx - 1 : idx + 2], values[idx - 1 : idx + 2])
    if vertex is None or not lo <= vertex[0] <= hi:
        return best
    return Extremum(lam=vertex[0], value=min(vertex[1], best.value))


def find_minimum(dcurve: DerivativeCurve) -> Extremum:
    return locate_minimum(
        dcurve.lambda_grid,
        dcurve.values,
        dcurve.evaluator,
        what=f"d^{dcurve.order}C({dcurve.r}) N={dcurve.size}",
    )
