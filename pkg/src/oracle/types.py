"""Typed contracts for the brute-force diagonalization oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

# Dense 8192-dimensional problems are the largest the oracle accepts.
MAX_ORACLE_SIZE = 13


class OracleErrorKind(str, Enum):
    SIZE_TOO_LARGE = "SizeTooLarge"
    NOT_FINITE = "NotFinite"
    NO_CONVERGENCE = "NoConvergence"
    SAME_SITE = "SameSite"
    SITE_OUT_OF_RANGE = "SiteOutOfRange"


@dataclass(frozen=True, eq=False)
class DenseGroundState:
    """Lowest eigenpair in the σz product basis (site 1 is the most significant bit)."""

    energy: float
    amplitudes: np.ndarray
    gap: float | None = None

    @property
    def n_sites(self) -> int:
        return int(round(math.log2(self.amplitudes.size)))


@dataclass
class OracleError(Exception):
    kind: OracleErrorKind
    message: str
    cause: BaseException | None = field(default=None, repr=False)

    def __str__(self) -> str:  # pragma: no cover - trivial
        return f"[{self.kind.value}] {self.message}"
