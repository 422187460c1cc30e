"""Validated XY-chain parameters and fixed critical constants."""

from .types import (
    CRITICAL,
    INFINITE,
    Axis,
    ChainSize,
    CriticalConstants,
    FiniteOdd,
    Infinite,
    ModelError,
    ModelErrorKind,
    ModelParams,
)
from .validate import validate, validate_gamma, validate_lambda, validate_size

__all__ = [
    "Axis",
    "CRITICAL",
    "ChainSize",
    "CriticalConstants",
    "FiniteOdd",
    "INFINITE",
    "Infinite",
    "ModelError",
    "ModelErrorKind",
    "ModelParams",
    "validate",
    "validate_gamma",
    "validate_lambda",
    "validate_size",
]
