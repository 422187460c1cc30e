"""Two-point spin functions as Toeplitz determinants of G."""

from __future__ import annotations

import numpy as np
from scipy.linalg import toeplitz

from src.model import Axis

from .types import GFunction, SolverError, SolverErrorKind


def g_window(r_max: int) -> range:
    """Separations needed for every two-point function up to ``r_max``."""
    return range(-(r_max + 1), r_max + 2)


def _det(matrix: np.ndarray) -> float:
    size = matrix.shape[0]
    if size == 1:
        return float(matrix[0, 0])
    if size == 2:
        return float(matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0])
    if size == 3:
        a = matrix
        return float(
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )
    return float(np.linalg.det(matrix))


def string_matrix(g: GFunction, axis: Axis | str, r: int) -> np.ndarray:
    """r×r matrix with entries G(a - b - 1) for x and G(a - b + 1) for y."""
    offset = -1 if Axis(axis) is Axis.X else 1
    column = [g[a + offset] for a in range(r)]
    row = [g[-b + offset] for b in range(r)]
    return toeplitz(column, row)


def two_point(g: GFunction, axis: Axis | str, r: int) -> float:
    """⟨σᵃ_i σᵃ_{i+r}⟩ from the contraction window ``g``."""
    axis = Axis(axis)
    if r < 1:
        raise SolverError(
            SolverErrorKind.MISSING_G_ENTRY,
            f"separation must be positive, got {r}",
        )
    if axis is Axis.Z:
        return g[0] ** 2 - g[r] * g[-r]
    return _det(string_matrix(g, axis, r))


def magnetization(g: GFunction) -> float:
    """⟨σᶻ⟩ = -G(0)."""
    return -g[0]
