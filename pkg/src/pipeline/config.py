"""Run configuration: command defaults, ``key = value`` files, flag overrides.

Config files hold one ``key = value`` per line with ``#`` comments; values are
read with python-dotenv (no interpolation). Unknown keys and lines without
``=`` are rejected with their line number.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Mapping
from dataclasses import fields, replace
from pathlib import Path
from typing import Any, Callable

from dotenv import dotenv_values

from src.model import INFINITE, ChainSize, FiniteOdd, validate_gamma, validate_lambda, validate_size

from .types import Command, GridKind, OutputFormat, PipelineError, PipelineErrorKind, RunConfig

logger = logging.getLogger(__name__)

_KEY_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_AUTO = "auto"

FLAGSHIP_SIZES = (41, 101, 251, 401, 801, 1601, 2701)
SWEEP_SIZES = (11, 41, 101, 251, 401, "inf")
ORACLE_SIZES = (3, 5, 7, 9, 11)
ORACLE_GAMMAS = (0.25, 0.5, 1.0)
ORACLE_LAMBDAS = (0.0, 0.5, 0.9, 1.0, 1.1, 2.0)
RANGE_GAMMAS = (1.0, 0.5, 0.25, 0.125)
# Far separations are entangled only in narrow λ windows at small γ.
RANGE_GRID_POINTS = 801


def _invalid(key: str, raw: str, expected: str, cause: BaseException | None = None) -> PipelineError:
    return PipelineError(
        PipelineErrorKind.CONFIG_INVALID,
        f"{key}: expected {expected}, got {raw!r}",
        cause=cause,
    )


def _parse_float(key: str) -> Callable[[str], float]:
    def parse(raw: str) -> float:
        try:
            return float(raw)
        except ValueError as exc:
            raise _invalid(key, raw, "a real number", exc) from exc

    return parse


def _parse_int(key: str, minimum: int = 1) -> Callable[[str], int]:
    def parse(raw: str) -> int:
        try:
            value = int(raw)
        except ValueError as exc:
            raise _invalid(key, raw, "an integer", exc) from exc
        if value < minimum:
            raise _invalid(key, raw, f"an integer >= {minimum}")
        return value

    return parse


def _parse_float_list(key: str) -> Callable[[str], tuple[float, ...]]:
    single = _parse_float(key)

    def parse(raw: str) -> tuple[float, ...]:
        tokens = [token.strip() for token in raw.split(",") if token.strip()]
        if not tokens:
            raise _invalid(key, raw, "a comma-separated list of numbers")
        return tuple(single(token) for token in tokens)

    return parse


def _parse_sizes(raw: str) -> tuple[ChainSize, ...]:
    sizes: list[ChainSize] = []
    for token in (part.strip() for part in raw.split(",")):
        if not token:
            continue
        if token.lower() in {"inf", "infinite"}:
            sizes.append(INFINITE)
            continue
        try:
            n = int(token)
        except ValueError as exc:
            raise _invalid("sizes", raw, "odd integers or 'inf'", exc) from exc
        sizes.append(validate_size(n))
    if not sizes:
        raise _invalid("sizes", raw, "at least one size")
    return tuple(sizes)


def _parse_optional(parser: Callable[[str], Any]) -> Callable[[str], Any]:
    def parse(raw: str) -> Any:
        return None if raw.strip().lower() == _AUTO else parser(raw)

    return parse


def _parse_choice(key: str, enum_type: type) -> Callable[[str], Any]:
    def parse(raw: str) -> Any:
        try:
            return enum_type(raw.strip().lower())
        except ValueError as exc:
            choices = "|".join(member.value for member in enum_type)
            raise _invalid(key, raw, choices, exc) from exc

    return parse


def _parse_path(raw: str) -> Path | None:
    raw = raw.strip()
    return None if raw in {"", "-"} else Path(raw).expanduser()


# key -> (RunConfig field, parser)
CONFIG_KEYS: dict[str, tuple[str, Callable[[str], Any]]] = {
    "gamma": ("gammas", _parse_float_list("gamma")),
    "sizes": ("sizes", _parse_optional(_parse_sizes)),
    "lambda_min": ("lambda_min", _parse_float("lambda_min")),
    "lambda_max": ("lambda_max", _parse_float("lambda_max")),
    "grid_points": ("grid_points", _parse_int("grid_points")),
    "grid_kind": ("grid_kind", _parse_choice("grid_kind", GridKind)),
    "r_max": ("r_max", _parse_optional(_parse_int("r_max"))),
    "step": ("step", _parse_float("step")),
    "threshold": ("threshold", _parse_float("threshold")),
    "lambda_0": ("lambda_0", _parse_float("lambda_0")),
    "lambdas": ("lambdas", _parse_optional(_parse_float_list("lambdas"))),
    "output_path": ("output_path", _parse_path),
    "format": ("format", _parse_choice("format", OutputFormat)),
    "threads": ("threads", _parse_int("threads")),
}


def default_config(command: Command) -> RunConfig:
    if command is Command.SWEEP:
        return RunConfig(command=command, sizes=_parse_sizes(",".join(map(str, SWEEP_SIZES))))
    if command is Command.FIT:
        return RunConfig(command=command, sizes=None)
    if command is Command.ORACLE_CHECK:
        return RunConfig(
            command=command,
            gammas=ORACLE_GAMMAS,
            sizes=tuple(FiniteOdd(n) for n in ORACLE_SIZES),
            lambdas=ORACLE_LAMBDAS,
        )
    return RunConfig(
        command=command,
        gammas=RANGE_GAMMAS,
        sizes=(INFINITE,),
        lambda_min=0.0,
        lambda_max=2.0,
        grid_points=RANGE_GRID_POINTS,
        grid_kind=GridKind.LINEAR,
    )


def read_config_file(path: Path) -> dict[str, str]:
    """Raw string values of a config file, keyed by config key."""
    if not path.is_file():
        raise PipelineError(PipelineErrorKind.CONFIG_INVALID, f"config file not found: {path}")
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise PipelineError(
                PipelineErrorKind.CONFIG_INVALID,
                f"{path}:{line_no}: expected 'key = value'",
            )
        key = stripped.split("=", 1)[0].strip()
        if not key or not _KEY_RE.match(key):
            raise PipelineError(
                PipelineErrorKind.CONFIG_INVALID, f"{path}:{line_no}: invalid key {key!r}"
            )
        if key not in CONFIG_KEYS:
            raise PipelineError(
                PipelineErrorKind.CONFIG_INVALID, f"{path}:{line_no}: unknown key {key!r}"
            )
    values = dotenv_values(path, interpolate=False)
    return {key: "" if value is None else value for key, value in values.items()}


def build_config(
    command: Command,
    config_path: Path | None = None,
    overrides: Mapping[str, str | None] | None = None,
) -> RunConfig:
    """Command defaults, then the config file, then flags (non-None overrides win)."""
    raw: dict[str, str] = {}
    if config_path is not None:
        raw.update(read_config_file(Path(config_path)))
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in CONFIG_KEYS:
            raise PipelineError(PipelineErrorKind.CONFIG_INVALID, f"unknown option {key!r}")
        raw[key] = str(value)

    changes: dict[str, Any] = {}
    for key, value in raw.items():
        attr, parser = CONFIG_KEYS[key]
        changes[attr] = parser(value)
    config = replace(default_config(command), **changes)
    _check(config)
    logger.info("effective config: %s", dict(echo_config(config)))
    return config


def _check(config: RunConfig) -> None:
    for gamma in config.gammas:
        validate_gamma(gamma)
    validate_lambda(config.lambda_min)
    validate_lambda(config.lambda_0)
    for lam in config.lambdas or ():
        validate_lambda(lam)
    if config.lambda_max < config.lambda_min:
        raise PipelineError(
            PipelineErrorKind.CONFIG_INVALID,
            f"lambda_max ({config.lambda_max:g}) is below lambda_min ({config.lambda_min:g})",
        )
    if config.step <= 0.0 or config.threshold < 0.0:
        raise PipelineError(
            PipelineErrorKind.CONFIG_INVALID, "step must be positive and threshold non-negative"
        )


def _echo_value(value: object) -> str:
    if value is None:
        return _AUTO
    if isinstance(value, (GridKind, OutputFormat)):
        return value.value
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, tuple):
        return ",".join(_echo_value(item) for item in value)
    return str(value)


def echo_config(config: RunConfig) -> list[tuple[str, str]]:
    """Ordered ``(key, value)`` pairs that parse back to the same config."""
    by_attr = {attr: key for key, (attr, _) in CONFIG_KEYS.items()}
    pairs: list[tuple[str, str]] = []
    for item in fields(config):
        if item.name not in by_attr:
            continue
        value = getattr(config, item.name)
        if item.name == "output_path":
            pairs.append((by_attr[item.name], "-" if value is None else str(value)))
        else:
            pairs.append((by_attr[item.name], _echo_value(value)))
    return pairs
