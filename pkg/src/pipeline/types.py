"""Typed contracts for the command-line pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Mapping, Sequence

from src.model import ChainSize

VERSION = "0.1.0"


class Command(str, Enum):
    SWEEP = "sweep"
    FIT = "fit"
    ORACLE_CHECK = "oracle-check"
    RANGE = "range"


class GridKind(str, Enum):
    LINEAR = "linear"
    GEOMETRIC = "geometric"

    @classmethod
    def _missing_(cls, value: object) -> GridKind | None:
        if isinstance(value, str) and value.strip().lower() == GEOMETRIC_ALIAS:
            return cls.GEOMETRIC
        return None


GEOMETRIC_ALIAS = "geometric-about-critical"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class Stage(str, Enum):
    """Ordered stages reported through the progress callback."""

    CONFIG = "config"
    EVALUATE = "evaluate"
    FIT = "fit"
    COMPARE = "compare"
    WRITE = "write"


class ProgressStatus(str, Enum):
    STARTED = "started"
    FINISHED = "finished"
    FAILED = "failed"


@dataclass(frozen=True)
class ProgressEvent:
    stage: Stage
    status: ProgressStatus
    detail: str | None = None


ProgressCallback = Callable[[ProgressEvent], None]


class PipelineErrorKind(str, Enum):
    CONFIG_INVALID = "ConfigInvalid"
    MISSING_SERIES = "MissingSeries"
    INPUT_INVALID = "InputInvalid"
    ORACLE_MISMATCH = "OracleMismatch"


@dataclass(frozen=True)
class RunConfig:
    """Effective parameters of one command after defaults, file and flags.

    ``sizes``, ``r_max`` and ``lambdas`` are None when the command derives them.
    """

    command: Command
    gammas: tuple[float, ...] = (1.0,)
    sizes: tuple[ChainSize, ...] | None = None
    lambda_min: float = 0.5
    lambda_max: float = 1.5
    grid_points: int = 121
    grid_kind: GridKind = GridKind.GEOMETRIC
    r_max: int | None = None
    step: float = 1e-4
    threshold: float = 1e-8
    lambda_0: float = 0.5
    lambdas: tuple[float, ...] | None = None
    output_path: Path | None = None
    format: OutputFormat = OutputFormat.CSV
    threads: int = 1

    @property
    def gamma(self) -> float:
        return self.gammas[0]


@dataclass(frozen=True)
class Table:
    """Column-ordered result rows plus scalar summary lines."""

    columns: tuple[str, ...]
    rows: Sequence[tuple[object, ...]]
    summary: Mapping[str, object] = field(default_factory=dict)


@dataclass
class PipelineError(Exception):
    kind: PipelineErrorKind
    message: str
    cause: BaseException | None = field(default=None, repr=False)

    def __str__(self) -> str:  # pragma: no cover - trivial
        return f"[{self.kind.value}] {self.message}"


def emit(
    callback: ProgressCallback | None,
    stage: Stage,
    status: ProgressStatus,
    detail: str | None = None,
) -> None:
    if callback is None:
        return
    callback(ProgressEvent(stage=stage, status=status, detail=detail))
