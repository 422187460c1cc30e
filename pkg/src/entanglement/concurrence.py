"""Wootters concurrence of a two-site state."""

from __future__ import annotations

import logging
import math

import numpy as np
import scipy.linalg

from .density import spin_flip
from .types import ConcurrenceMethod, EntanglementError, EntanglementErrorKind, TwoSiteState

logger = logging.getLogger(__name__)

NEGATIVE_CLIP = 1e-10
IMAGINARY_TOLERANCE = 1e-10
# Absolute rounding level of assembled ρ entries.
RHO_NOISE = 1e-15
# Concurrences at or below this are reported as exactly zero.
CONCURRENCE_FLOOR = 1e-12


def _floor(value: float) -> float:
    return 0.0 if value <= CONCURRENCE_FLOOR else min(1.0, value)


def _clip(eigenvalues: np.ndarray) -> np.ndarray:
    lowest = float(np.min(eigenvalues))
    if lowest < -NEGATIVE_CLIP:
        raise EntanglementError(
            EntanglementErrorKind.SPECTRUM_INCONSISTENT,
            f"eigenvalue {lowest:.3e} of rho*rho_tilde is negative",
        )
    return np.clip(eigenvalues, 0.0, None)


def _symmetrized_spectrum(state: TwoSiteState) -> np.ndarray:
    values, vectors = np.linalg.eigh(state.rho)
    root = (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.T
    product = root @ spin_flip(state) @ root
    return np.linalg.eigvalsh(0.5 * (product + product.T))


def _general_spectrum(state: TwoSiteState) -> np.ndarray:
    values = scipy.linalg.eigvals(state.rho @ spin_flip(state))
    if np.max(np.abs(values.imag)) > IMAGINARY_TOLERANCE:
        raise EntanglementError(
            EntanglementErrorKind.SPECTRUM_INCONSISTENT,
            f"rho*rho_tilde has complex eigenvalues (max imag {np.max(np.abs(values.imag)):.3e})",
        )
    return values.real


def _coherence_excess(coherence: float, first: float, second: float) -> float:
    """|coherence| - √(first·second), with each population raised by its rounding level.

    A population at rounding level (ρ44 near λ = 0) still bounds the
    coherence by √RHO_NOISE, so noise in ``coherence`` never reads as
    entanglement.
    """
    bound = math.sqrt((abs(first) + RHO_NOISE) * (abs(second) + RHO_NOISE))
    return abs(coherence) - bound


def x_state_concurrence(state: TwoSiteState) -> float:
    """2·max(0, |ρ23| - √(ρ11ρ44), |ρ14| - √(ρ22ρ33))."""
    rho = state.rho
    outer = _coherence_excess(rho[1, 2], rho[0, 0], rho[3, 3])
    inner = _coherence_excess(rho[0, 3], rho[1, 1], rho[2, 2])
    return _floor(2.0 * max(outer, inner))


def concurrence(
    state: TwoSiteState,
    method: ConcurrenceMethod | str = ConcurrenceMethod.SYMMETRIZED,
) -> float:
    """max{0, r₁ - r₂ - r₃ - r₄} with r_α the square roots of the spectrum of ρρ̃."""
    method = ConcurrenceMethod(method)
    if method is ConcurrenceMethod.X_STATE:
        return x_state_concurrence(state)
    if method is ConcurrenceMethod.GENERAL:
        spectrum = _general_spectrum(state)
    else:
        spectrum = _symmetrized_spectrum(state)
    roots = np.sort(np.sqrt(_clip(spectrum)))[::-1]
    return _floor(float(roots[0] - roots[1] - roots[2] - roots[3]))
