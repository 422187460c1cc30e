"""Lowest eigenpair of a real symmetric Hamiltonian matrix."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg
from scipy import sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh
from scipy.sparse.linalg import norm as sparse_norm

from .types import DenseGroundState, OracleError, OracleErrorKind

logger = logging.getLogger(__name__)

# Up to N = 11 a dense solve is cheap; beyond that Lanczos takes over.
DENSE_DIMENSION_LIMIT = 1 << 11
RESIDUAL_TOLERANCE = 1e-10
GAP_WARNING = 1e-10
_LANCZOS_MAXITER = 20_000


def _frobenius(matrix: sparse.spmatrix | np.ndarray) -> float:
    if sparse.issparse(matrix):
        return float(sparse_norm(matrix))
    return float(np.linalg.norm(matrix))


def _lowest_pair(matrix: sparse.spmatrix | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    dim = matrix.shape[0]
    top = min(1, dim - 1)
    if dim <= DENSE_DIMENSION_LIMIT:
        dense = matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix, dtype=float)
        return scipy.linalg.eigh(dense, subset_by_index=[0, top])
    try:
        values, vectors = eigsh(
            sparse.csr_matrix(matrix),
            k=2,
            which="SA",
            tol=0.0,
            maxiter=_LANCZOS_MAXITER,
        )
    except ArpackNoConvergence as exc:
        raise OracleError(
            OracleErrorKind.NO_CONVERGENCE,
            f"Lanczos did not converge for dimension {dim}",
            cause=exc,
        ) from exc
    order = np.argsort(values)
    return values[order], vectors[:, order]


def ground_state(hamiltonian: sparse.spmatrix | np.ndarray) -> DenseGroundState:
    """Return the lowest eigenpair with a deterministic global sign.

    The largest-magnitude amplitude is made positive. A warning is logged when
    the two lowest levels are closer than ``GAP_WARNING``.
    """
    values, vectors = _lowest_pair(hamiltonian)
    energy = float(values[0])
    vector = np.array(vectors[:, 0], dtype=float)
    vector /= np.linalg.norm(vector)

    residual = float(np.linalg.norm(hamiltonian @ vector - energy * vector))
    scale = max(_frobenius(hamiltonian), 1.0)
    if residual > RESIDUAL_TOLERANCE * scale:
        raise OracleError(
            OracleErrorKind.NO_CONVERGENCE,
            f"eigenpair residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:g}·‖H‖",
        )

    pivot = int(np.argmax(np.abs(vector)))
    if vector[pivot] < 0:
        vector = -vector

    gap = float(values[1] - values[0]) if values.size > 1 else None
    if gap is not None and gap < GAP_WARNING:
        logger.warning("GapTooSmall: lowest levels differ by %.3e", gap)
    return DenseGroundState(energy=energy, amplitudes=vector, gap=gap)
