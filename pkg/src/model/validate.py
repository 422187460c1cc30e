"""Validation of raw parameter records coming from flags or config files."""

from __future__ import annotations

import math
import numbers
from collections.abc import Mapping

from .types import (
    INFINITE,
    ChainSize,
    FiniteOdd,
    Infinite,
    ModelError,
    ModelErrorKind,
    ModelParams,
)

_INFINITE_TOKENS = frozenset({"inf", "infinite", "∞"})


def _as_float(raw: object, param: str) -> float:
    try:
        value = float(raw)  # type: ignore[arg-type]
    except (TypeError, ValueError) as exc:
        raise ModelError(
            ModelErrorKind.NOT_A_NUMBER,
            f"{param} must be a real number, got {raw!r}",
            param=param,
            cause=exc,
        ) from exc
    if not math.isfinite(value):
        raise ModelError(
            ModelErrorKind.NOT_A_NUMBER,
            f"{param} must be finite, got {raw!r}",
            param=param,
        )
    return value


def validate_size(raw: object) -> ChainSize:
    """Accept an odd integer ≥ 3, a size variant, or the ``inf`` marker."""
    if isinstance(raw, Infinite):
        return INFINITE
    if isinstance(raw, FiniteOdd):
        raw = raw.n
    if isinstance(raw, str):
        token = raw.strip().lower()
        if token in _INFINITE_TOKENS:
            return INFINITE
        try:
            raw = int(token)
        except ValueError as exc:
            raise ModelError(
                ModelErrorKind.INVALID_SIZE,
                f"size must be an odd integer or 'inf', got {raw!r}",
                param="size",
                cause=exc,
            ) from exc
    if isinstance(raw, float) and math.isinf(raw) and raw > 0:
        return INFINITE
    if (
        isinstance(raw, bool)
        or not isinstance(raw, numbers.Real)
        or not math.isfinite(raw)
        or int(raw) != raw
    ):
        raise ModelError(
            ModelErrorKind.INVALID_SIZE,
            f"size must be an odd integer or 'inf', got {raw!r}",
            param="size",
        )
    n = int(raw)
    if n < 3:
        raise ModelError(
            ModelErrorKind.INVALID_SIZE,
            f"size must be at least 3, got {n}",
            param="size",
        )
    if n % 2 == 0:
        raise ModelError(
            ModelErrorKind.EVEN_N,
            f"size must be odd, got {n}",
            param="size",
        )
    return FiniteOdd(n)


def validate_gamma(raw: object) -> float:
    gamma = _as_float(raw, "gamma")
    if not 0.0 < gamma <= 1.0:
        raise ModelError(
            ModelErrorKind.OUT_OF_RANGE_GAMMA,
            f"gamma must lie in (0, 1], got {gamma:g}",
            param="gamma",
        )
    return gamma


def validate_lambda(raw: object) -> float:
    lam = _as_float(raw, "lambda")
    if lam < 0.0:
        raise ModelError(
            ModelErrorKind.NEGATIVE_LAMBDA,
            f"lambda must be non-negative, got {lam:g}",
            param="lambda",
        )
    return lam


def validate(raw: Mapping[str, object] | ModelParams) -> ModelParams:
    """Turn a raw record (keys ``size`` or ``n``, ``gamma``, ``lambda``) into ModelParams.

    Passing an existing ModelParams re-checks it and returns an equal value.
    """
    if isinstance(raw, ModelParams):
        size_raw: object = raw.size
        gamma_raw: object = raw.gamma
        lam_raw: object = raw.lam
    else:
        size_raw = raw.get("size", raw.get("n"))
        gamma_raw = raw.get("gamma")
        lam_raw = raw.get("lambda", raw.get("lam"))
    for param, value in (("size", size_raw), ("gamma", gamma_raw), ("lambda", lam_raw)):
        if value is None:
            raise ModelError(
                ModelErrorKind.NOT_A_NUMBER,
                f"missing required field: {param}",
                param=param,
            )
    return ModelParams(
        size=validate_size(size_raw),
        gamma=validate_gamma(gamma_raw),
        lam=validate_lambda(lam_raw),
    )
