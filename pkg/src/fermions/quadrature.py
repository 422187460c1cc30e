"""Infinite-chain contractions as adaptive quadratures over [0, π]."""

from __future__ import annotations

import logging
import math

from scipy.integrate import quad

from .types import SolverError, SolverErrorKind

logger = logging.getLogger(__name__)

QUAD_EPSABS = 1e-12
QUAD_EPSREL = 1e-12
QUAD_LIMIT = 400
# Accepted error when QUADPACK flags the result.
QUAD_TOLERANCE = 1e-11


def _omega(k: float, gamma: float, lam: float) -> float:
    return math.hypot(1.0 - lam * math.cos(k), lam * gamma * math.sin(k))


def breakpoints(gamma: float, lam: float) -> list[float]:
    """Interior points where the integrand changes on a short scale.

    Near λ = 1 the dispersion bends over a width |λ - 1|/γ around k = 0;
    above λ = 1 it has a shallow minimum at cos k = 1/λ.
    """
    points: list[float] = []
    width = abs(lam - 1.0) / gamma
    if width > 0.0:
        points.extend(width * scale for scale in (0.25, 1.0, 4.0, 16.0))
    if lam > 1.0:
        points.append(math.acos(1.0 / lam))
    return sorted({p for p in points if 0.0 < p < math.pi})


def _integrate(integrand, gamma: float, lam: float, what: str) -> float:
    points = breakpoints(gamma, lam) or None
    result = quad(
        integrand,
        0.0,
        math.pi,
        epsabs=QUAD_EPSABS,
        epsrel=QUAD_EPSREL,
        limit=QUAD_LIMIT,
        points=points,
        full_output=1,
    )
    value, abserr = float(result[0]), float(result[1])
    if len(result) > 3:
        message = str(result[3]).splitlines()[0] if result[3] else "flagged"
        if abserr > QUAD_TOLERANCE:
            raise SolverError(
                SolverErrorKind.QUADRATURE_NO_CONVERGENCE,
                f"{what} at gamma={gamma:g} lambda={lam:.12g}: "
                f"error estimate {abserr:.2e} after {QUAD_LIMIT} subdivisions ({message})",
            )
        logger.warning("%s at lambda=%.12g accepted with flag: %s", what, lam, message)
    return value


def infinite_g(gamma: float, lam: float, n: int) -> float:
    """G(n) = -(1/π) ∫₀^π [(1 - λcos k) cos nk - λγ sin k sin nk] / ω(k) dk."""
    if lam == 0.0:
        return -1.0 if n == 0 else 0.0

    def integrand(k: float) -> float:
        omega = _omega(k, gamma, lam)
        if omega == 0.0:
            # Only k = 0 at λ = 1, where the ratio tends to zero.
            return 0.0
        return ((1.0 - lam * math.cos(k)) * math.cos(n * k) - lam * gamma * math.sin(k) * math.sin(n * k)) / omega

    return -_integrate(integrand, gamma, lam, f"G({n})") / math.pi


def infinite_energy_density(gamma: float, lam: float) -> float:
    """Ground energy per site, -(1/π) ∫₀^π ω(k) dk."""
    return -_integrate(lambda k: _omega(k, gamma, lam), gamma, lam, "energy density") / math.pi
