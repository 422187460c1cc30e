"""Typed contracts shared by every solver: chain sizes, parameters, constants."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Union


class ModelErrorKind(str, Enum):
    EVEN_N = "EvenN"
    INVALID_SIZE = "InvalidSize"
    OUT_OF_RANGE_GAMMA = "OutOfRangeGamma"
    NEGATIVE_LAMBDA = "NegativeLambda"
    NOT_A_NUMBER = "NotANumber"


class Axis(str, Enum):
    """Spin component of a two-point function."""

    X = "x"
    Y = "y"
    Z = "z"


@dataclass(frozen=True)
class FiniteOdd:
    """Periodic ring of ``n`` sites; ``n`` is odd and at least 3."""

    n: int

    def __str__(self) -> str:
        return str(self.n)


@dataclass(frozen=True)
class Infinite:
    """Thermodynamic-limit marker."""

    def __str__(self) -> str:
        return "inf"


ChainSize = Union[FiniteOdd, Infinite]

INFINITE = Infinite()


@dataclass(frozen=True)
class ModelParams:
    """One validated point of the anisotropic XY chain in a transverse field.

    ``lam`` is the reduced coupling λ = J/2h with h = 1 as the energy unit.
    """

    size: ChainSize
    gamma: float
    lam: float

    @property
    def is_infinite(self) -> bool:
        return isinstance(self.size, Infinite)

    @property
    def n(self) -> int | None:
        return self.size.n if isinstance(self.size, FiniteOdd) else None

    def at(self, lam: float) -> ModelParams:
        """Same chain and anisotropy at another coupling."""
        return replace(self, lam=float(lam))


@dataclass(frozen=True)
class CriticalConstants:
    lambda_c: float = 1.0
    nu: float = 1.0


CRITICAL = CriticalConstants()


@dataclass
class ModelError(Exception):
    """Rejected parameter record; ``param`` names the offending field."""

    kind: ModelErrorKind
    message: str
    param: str | None = None
    cause: BaseException | None = field(default=None, repr=False)

    def __str__(self) -> str:  # pragma: no cover - trivial
        return f"[{self.kind.value}] {self.message}"
