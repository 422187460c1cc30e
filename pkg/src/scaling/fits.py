"""Logarithmic and power-law least squares used by the scaling analysis."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
from scipy.stats import linregress

from .types import LogFit, PowerFit, ScalingError, ScalingErrorKind

MIN_FIT_POINTS = 3


def _design(x: Sequence[float] | np.ndarray, y: Sequence[float] | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise ValueError(f"x and y lengths differ: {x.size} != {y.size}")
    if x.size < MIN_FIT_POINTS:
        raise ScalingError(
            ScalingErrorKind.TOO_FEW_POINTS,
            f"need at least {MIN_FIT_POINTS} points, got {x.size}",
        )
    if np.any(x <= 0.0):
        raise ScalingError(
            ScalingErrorKind.NOT_POSITIVE_ABSCISSA,
            "logarithmic fits need strictly positive abscissae",
        )
    if np.ptp(x) == 0.0:
        raise ScalingError(ScalingErrorKind.DEGENERATE_DESIGN, "all abscissae are equal")
    return x, y


def fit_log(x: Sequence[float] | np.ndarray, y: Sequence[float] | np.ndarray) -> LogFit:
    """Least squares of y against ln x."""
    x, y = _design(x, y)
    lnx = np.log(x)
    fit = linregress(lnx, y)
    misfit = y - (fit.slope * lnx + fit.intercept)
    return LogFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        residual=float(np.sqrt(np.mean(misfit**2))),
        stderr=float(fit.stderr),
        points=int(x.size),
    )


def fit_loglog(x: Sequence[float] | np.ndarray, y: Sequence[float] | np.ndarray) -> LogFit:
    """Least squares of ln y against ln x; y must be positive."""
    y_arr = np.asarray(y, dtype=float)
    if np.any(y_arr <= 0.0):
        raise ScalingError(
            ScalingErrorKind.NOT_POSITIVE_ABSCISSA,
            "log-log fits need strictly positive ordinates",
        )
    return fit_log(x, np.log(y_arr))


def fit_power(n_values: Sequence[float] | np.ndarray, shifts: Sequence[float] | np.ndarray) -> PowerFit:
    """|shift| ∝ N^(-theta) with the common sign of the shifts reported separately."""
    shifts = np.asarray(shifts, dtype=float)
    signs = np.sign(shifts)
    if np.any(signs == 0) or np.unique(signs).size > 1:
        raise ScalingError(
            ScalingErrorKind.SIGN_CHANGE,
            "shifts change sign (or vanish) across sizes: " + ", ".join(f"{s:.3e}" for s in shifts),
        )
    fit = fit_loglog(n_values, np.abs(shifts))
    return PowerFit(
        theta=abs(fit.slope),
        amplitude=math.exp(fit.intercept),
        residual=fit.residual,
        stderr=fit.stderr,
        sign=int(signs[0]),
    )


def prefactor_ratio_nu(finite_slope: float, infinite_slope: float) -> float:
    """ν = |infinite_slope| / |finite_slope|."""
    if finite_slope == 0.0 or infinite_slope == 0.0:
        raise ScalingError(
            ScalingErrorKind.ZERO_DENOMINATOR,
            f"log prefactors must be nonzero (finite={finite_slope:g}, infinite={infinite_slope:g})",
        )
    return abs(infinite_slope) / abs(finite_slope)
