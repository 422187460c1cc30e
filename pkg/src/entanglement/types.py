"""Two-site states, concurrence curves, and entanglement failures."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

import numpy as np

from src.model import ChainSize

# Global two-site basis: index = 2*s_i + s_j with s = 0 for spin up.
BASIS_LABELS: tuple[str, ...] = ("up,up", "up,down", "down,up", "down,down")


class EntanglementErrorKind(str, Enum):
    NOT_POSITIVE = "NotPositive"
    SPECTRUM_INCONSISTENT = "SpectrumInconsistent"
    STRUCTURE_VIOLATION = "StructureViolation"
    GRID_NOT_INCREASING = "GridNotIncreasing"


class ConcurrenceMethod(str, Enum):
    """How the spectrum of ρ·ρ̃ is obtained.

    ``symmetrized`` diagonalizes √ρ ρ̃ √ρ (Hermitian, same spectrum).
    ``general`` runs a non-symmetric eigensolver on ρ ρ̃.
    ``x_state`` uses the closed form valid for the parity-symmetric structure;
    it is smooth in the matrix entries, which keeps λ-derivatives clean.
    """

    SYMMETRIZED = "symmetrized"
    GENERAL = "general"
    X_STATE = "x_state"


@dataclass(frozen=True, eq=False)
class TwoSiteState:
    """Real symmetric 4×4 reduced density matrix in the basis ``BASIS_LABELS``."""

    rho: np.ndarray

    def entry(self, a: int, b: int) -> float:
        """1-based matrix entry, e.g. ``entry(1, 4)`` for ρ₁₄."""
        return float(self.rho[a - 1, b - 1])


@dataclass(frozen=True, eq=False)
class ConcurrenceCurve:
    size: ChainSize
    gamma: float
    lambda_grid: np.ndarray
    c_values: Mapping[int, np.ndarray]

    @property
    def r_max(self) -> int:
        return max(self.c_values) if self.c_values else 0


@dataclass
class EntanglementError(Exception):
    kind: EntanglementErrorKind
    message: str
    cause: BaseException | None = field(default=None, repr=False)

    def __str__(self) -> str:  # pragma: no cover - trivial
        return f"[{self.kind.value}] {self.message}"
