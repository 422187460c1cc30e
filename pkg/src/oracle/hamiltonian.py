"""Sparse σz-basis matrix of the periodic XY chain in a transverse field."""

from __future__ import annotations

import logging

import numpy as np
from scipy import sparse

from src.model import ModelParams

from .types import MAX_ORACLE_SIZE, OracleError, OracleErrorKind

logger = logging.getLogger(__name__)


def bond_couplings(params: ModelParams, *, mirrored: bool = False) -> tuple[float, float]:
    """Return (Jx, Jy) for H = -Σ [Jx σxσx + Jy σyσy] - Σ σz.

    The default puts (1 - γ) on the xx bond, so at γ = 1 only σyσy couples.
    ``mirrored`` swaps the two, giving the usual (1 + γ)-on-xx convention.
    """
    jx = params.lam * (1.0 - params.gamma) / 2.0
    jy = params.lam * (1.0 + params.gamma) / 2.0
    if mirrored:
        jx, jy = jy, jx
    return jx, jy


def site_bits(n: int) -> np.ndarray:
    """Occupation table ``bits[state, site]`` with 1 meaning spin down."""
    states = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return (states[:, None] >> shifts[None, :]) & 1


def build_hamiltonian(params: ModelParams, *, mirrored: bool = False) -> sparse.csr_matrix:
    """Real symmetric 2^N × 2^N Hamiltonian of a finite periodic chain."""
    if params.is_infinite:
        raise OracleError(
            OracleErrorKind.NOT_FINITE,
            "the oracle only diagonalizes finite chains",
        )
    n = int(params.n)  # type: ignore[arg-type]
    if n > MAX_ORACLE_SIZE:
        raise OracleError(
            OracleErrorKind.SIZE_TOO_LARGE,
            f"N={n} exceeds the oracle limit of {MAX_ORACLE_SIZE} sites",
        )

    dim = 1 << n
    states = np.arange(dim, dtype=np.int64)
    bits = site_bits(n)
    jx, jy = bond_couplings(params, mirrored=mirrored)

    rows = [states]
    cols = [states]
    vals = [-(n - 2.0 * bits.sum(axis=1))]
    for i in range(n):
        j = (i + 1) % n
        # σyσy on two equal spins gives i·i = -1, on opposite spins +1.
        sign = np.where(bits[:, i] == bits[:, j], -1.0, 1.0)
        amplitude = -(jx + jy * sign)
        keep = amplitude != 0.0
        mask = (1 << (n - 1 - i)) | (1 << (n - 1 - j))
        rows.append(states[keep])
        cols.append((states ^ mask)[keep])
        vals.append(amplitude[keep])

    matrix = sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    ).tocsr()
    logger.debug("built N=%d Hamiltonian with %d nonzeros", n, matrix.nnz)
    return matrix
