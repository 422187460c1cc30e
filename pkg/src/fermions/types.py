"""Typed contracts for the free-fermion correlator solver."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from src.model import ModelParams


class SolverErrorKind(str, Enum):
    R_MAX_TOO_LARGE = "RMaxTooLarge"
    MISSING_G_ENTRY = "MissingGEntry"
    QUADRATURE_NO_CONVERGENCE = "QuadratureNoConvergence"
    NOT_FINITE = "NotFinite"


class GSource(str, Enum):
    FINITE_SUM = "finite_sum"
    INFINITE_QUADRATURE = "infinite_quadrature"


class Sector(str, Enum):
    """Fermion-parity sector of a periodic ring.

    Even spin-flip parity (Π σz = +1) carries antiperiodic fermions,
    odd parity carries periodic ones.
    """

    ANTIPERIODIC = "antiperiodic"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class SectorEnergies:
    antiperiodic: float
    periodic: float

    @property
    def selected(self) -> Sector:
        # Ties keep the even-parity sector.
        if self.periodic < self.antiperiodic:
            return Sector.PERIODIC
        return Sector.ANTIPERIODIC

    @property
    def ground(self) -> float:
        return min(self.antiperiodic, self.periodic)


@dataclass(frozen=True)
class GFunction:
    """Majorana contraction G(n) = -i⟨B_l A_{l-n}⟩ on a window of separations."""

    values: Mapping[int, float]
    source: GSource
    params: ModelParams
    sector: Sector | None = None

    def __getitem__(self, n: int) -> float:
        try:
            return self.values[n]
        except KeyError as exc:
            raise SolverError(
                SolverErrorKind.MISSING_G_ENTRY,
                f"G({n}) is outside the evaluated window",
                cause=exc,
            ) from exc


@dataclass(frozen=True)
class CorrelatorSet:
    mz: float
    gxx: Mapping[int, float]
    gyy: Mapping[int, float]
    gzz: Mapping[int, float]
    params: ModelParams

    @property
    def r_max(self) -> int:
        return max(self.gzz) if self.gzz else 0


@dataclass
class SolverError(Exception):
    kind: SolverErrorKind
    message: str
    cause: BaseException | None = field(default=None, repr=False)

    def __str__(self) -> str:  # pragma: no cover - trivial
        return f"[{self.kind.value}] {self.message}"
