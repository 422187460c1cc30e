"""Typed results of derivative, fit and collapse analysis."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping

import numpy as np

from src.model import ChainSize


class ScalingErrorKind(str, Enum):
    STEP_TOO_SMALL = "StepTooSmall"
    NO_INTERIOR_MINIMUM = "NoInteriorMinimum"
    DEGENERATE_DESIGN = "DegenerateDesign"
    TOO_FEW_POINTS = "TooFewPoints"
    NOT_POSITIVE_ABSCISSA = "NotPositiveAbscissa"
    SIGN_CHANGE = "SignChange"
    ZERO_DENOMINATOR = "ZeroDenominator"
    NO_OVERLAP = "NoOverlap"
    FLAT_OBJECTIVE = "FlatObjective"
    TOO_FEW_SIZES = "TooFewSizes"
    REFERENCE_NOT_SAMPLED = "ReferenceNotSampled"


PointEvaluator = Callable[[float], float]


@dataclass(frozen=True, eq=False)
class DerivativeCurve:
    """∂λᵏ C(r) sampled on a grid; ``evaluator`` recomputes it at any λ when known."""

    order: int
    lambda_grid: np.ndarray
    values: np.ndarray
    step: float
    r: int
    size: ChainSize
    evaluator: PointEvaluator | None = field(default=None, repr=False)


@dataclass(frozen=True)
class Extremum:
    lam: float
    value: float


@dataclass(frozen=True)
class LogFit:
    """y = slope·ln x + intercept; ``residual`` is the RMS misfit."""

    slope: float
    intercept: float
    residual: float
    stderr: float
    points: int


@dataclass(frozen=True)
class PowerFit:
    """|shift| = amplitude · N^(-theta); ``sign`` is the observed sign of the shift."""

    theta: float
    amplitude: float
    residual: float
    stderr: float
    sign: int


@dataclass(frozen=True, eq=False)
class CollapseResult:
    """Rescaled curves at one ν.

    ``spread`` is √residual over ``dynamic_range``, the span of the rescaled
    ordinate across every sample of every size.
    """

    nu: float
    residual: float
    spread: float
    dynamic_range: float
    q_samples: np.ndarray
    scatter: np.ndarray
    sizes: tuple[int, ...]


@dataclass(frozen=True)
class NuFit:
    nu: float
    stderr: float
    residual: float


@dataclass(frozen=True, eq=False)
class ScalingReport:
    """Critical-scaling content of one derivative family ∂λᵏC(r) over chain sizes.

    Optional fields are None when the inputs cannot determine them; ``omitted``
    maps each such field to the reason.
    """

    gamma: float
    r: int
    order: int
    lambda_0: float
    lambda_m_per_n: Mapping[int, Extremum]
    theta: PowerFit | None = None
    finite_slope: LogFit | None = None
    infinite_slope: LogFit | None = None
    nu_ratio: float | None = None
    nu_fit: NuFit | None = None
    collapse: CollapseResult | None = None
    omitted: Mapping[str, str] = field(default_factory=dict)

    @property
    def collapse_residual(self) -> float | None:
        return None if self.collapse is None else self.collapse.residual

    @property
    def q_samples(self) -> np.ndarray | None:
        return None if self.collapse is None else self.collapse.q_samples


@dataclass(frozen=True, eq=False)
class C2Report:
    """Next-nearest-neighbour concurrence: peak positions and its own scaling."""

    peaks: Mapping[int, Extremum]
    maxima_decreasing: bool
    scaling: ScalingReport


@dataclass
class ScalingError(Exception):
    kind: ScalingErrorKind
    message: str
    cause: BaseException | None = field(default=None, repr=False)

    def __str__(self) -> str:  # pragma: no cover - trivial
        return f"[{self.kind.value}] {self.message}"
