"""Partial traces and spin correlators of an oracle ground state."""

from __future__ import annotations

import numpy as np

from src.entanglement.types import TwoSiteState
from src.model import Axis

from .types import DenseGroundState, OracleError, OracleErrorKind

_PAULI_PAIR = {
    Axis.X: np.array(
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=float
    ),
    # σy⊗σy is real: (±i)(±i) products only.
    Axis.Y: np.array(
        [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=float
    ),
    Axis.Z: np.diag([1.0, -1.0, -1.0, 1.0]),
}


def _check_site(state: DenseGroundState, site: int) -> int:
    n = state.n_sites
    if not 1 <= site <= n:
        raise OracleError(
            OracleErrorKind.SITE_OUT_OF_RANGE,
            f"site {site} outside [1, {n}]",
        )
    return site - 1


def _check_pair(state: DenseGroundState, i: int, j: int) -> tuple[int, int]:
    a = _check_site(state, i)
    b = _check_site(state, j)
    if a == b:
        raise OracleError(OracleErrorKind.SAME_SITE, f"sites must differ, got {i} twice")
    return a, b


def reduced_density_matrix(state: DenseGroundState, i: int, j: int) -> TwoSiteState:
    """Trace out every spin except sites ``i`` and ``j`` (1-based)."""
    a, b = _check_pair(state, i, j)
    n = state.n_sites
    psi = state.amplitudes.reshape([2] * n)
    psi = np.moveaxis(psi, (a, b), (0, 1)).reshape(4, -1)
    rho = psi @ psi.T
    return TwoSiteState(rho=0.5 * (rho + rho.T))


def correlator(state: DenseGroundState, axis: Axis | str, i: int, j: int) -> float:
    """⟨σᵃ_i σᵃ_j⟩ for a ∈ {x, y, z}."""
    rho = reduced_density_matrix(state, i, j).rho
    return float(np.trace(rho @ _PAULI_PAIR[Axis(axis)]))


def magnetization_site(state: DenseGroundState, i: int) -> float:
    """⟨σᶻ_i⟩ from the one-site reduced density matrix."""
    a = _check_site(state, i)
    psi = np.moveaxis(state.amplitudes.reshape([2] * state.n_sites), a, 0).reshape(2, -1)
    rho = psi @ psi.T
    return float(rho[0, 0] - rho[1, 1])
