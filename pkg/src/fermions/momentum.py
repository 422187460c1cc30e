"""Finite periodic rings: discrete momenta, parity sectors and G(n) sums.

After Jordan–Wigner with Majoranas A_j, B_j (σz_j = -i A_j B_j) the chain is
H = i Σ A_l M_{lm} B_m, a circulant whose symbol is

    μ(k) = 1 - λ cos k - i λγ sin k,     ω(k) = |μ(k)|.

The boundary twist depends on the spin-flip parity, so each parity sector has
its own momentum grid. In the periodic grid the k = 0 mode is unpaired and its
occupation is fixed by parity, giving it the constant phase -1.
"""

from __future__ import annotations

import logging

import numpy as np

from src.model import ModelParams

from .types import GFunction, GSource, Sector, SectorEnergies, SolverError, SolverErrorKind

logger = logging.getLogger(__name__)


def _ring_size(params: ModelParams) -> int:
    if params.is_infinite:
        raise SolverError(
            SolverErrorKind.NOT_FINITE,
            "momentum sums need a finite ring; use the quadrature solver",
        )
    return int(params.n)  # type: ignore[arg-type]


def momenta(n: int, sector: Sector) -> np.ndarray:
    q = np.arange(n, dtype=float)
    if sector is Sector.ANTIPERIODIC:
        return np.pi * (2.0 * q + 1.0) / n
    return 2.0 * np.pi * q / n


def dispersion(k: np.ndarray, gamma: float, lam: float) -> np.ndarray:
    return np.hypot(1.0 - lam * np.cos(k), lam * gamma * np.sin(k))


def _phases(k: np.ndarray, gamma: float, lam: float, sector: Sector) -> tuple[np.ndarray, np.ndarray]:
    """cos and sin of the Bogoliubov phase for every mode of the sector."""
    omega = dispersion(k, gamma, lam)
    zero_mode = np.isclose(k, 0.0) if sector is Sector.PERIODIC else np.zeros(k.shape, bool)
    safe = np.where(zero_mode, 1.0, omega)
    cos_phi = np.where(zero_mode, -1.0, (1.0 - lam * np.cos(k)) / safe)
    sin_phi = np.where(zero_mode, 0.0, lam * gamma * np.sin(k) / safe)
    return cos_phi, sin_phi


def sector_energies(params: ModelParams) -> SectorEnergies:
    """Ground energies of both parity sectors of a finite ring."""
    n = _ring_size(params)
    gamma, lam = params.gamma, params.lam

    k_ap = momenta(n, Sector.ANTIPERIODIC)
    e_ap = -float(np.sum(dispersion(k_ap, gamma, lam)))

    k_p = momenta(n, Sector.PERIODIC)[1:]
    e_p = -float(np.sum(dispersion(k_p, gamma, lam))) + (1.0 - lam)
    return SectorEnergies(antiperiodic=e_ap, periodic=e_p)


def ground_energy(params: ModelParams) -> float:
    return sector_energies(params).ground


def finite_g_values(params: ModelParams, separations: np.ndarray, sector: Sector | None = None) -> np.ndarray:
    """G(n) for every entry of ``separations`` in the ground-state sector."""
    n = _ring_size(params)
    seps = np.asarray(separations, dtype=float)
    if params.lam == 0.0:
        # Fully polarized ground state: G(n) = -δ(n, 0) without summing rounding noise.
        return np.where(seps == 0.0, -1.0, 0.0)
    if sector is None:
        sector = sector_energies(params).selected
    k = momenta(n, sector)
    cos_phi, sin_phi = _phases(k, params.gamma, params.lam, sector)
    kn = np.outer(seps, k)
    return -(np.cos(kn) @ cos_phi - np.sin(kn) @ sin_phi) / n


def finite_g(params: ModelParams, n: int) -> float:
    return float(finite_g_values(params, np.array([n]))[0])


def finite_g_function(params: ModelParams, window: range) -> GFunction:
    energies = sector_energies(params)
    sector = energies.selected
    seps = np.array(list(window))
    values = finite_g_values(params, seps, sector)
    logger.debug(
        "N=%s lambda=%g sector=%s (E_ap=%.12g, E_p=%.12g)",
        params.n,
        params.lam,
        sector.value,
        energies.antiperiodic,
        energies.periodic,
    )
    return GFunction(
        values={int(s): float(v) for s, v in zip(seps, values)},
        source=GSource.FINITE_SUM,
        params=params,
        sector=sector,
    )
