"""Command-line front end: sweep, fit, oracle-check and range.

Data goes to ``--out`` (or stdout); progress and diagnostics go to stderr.
Exit codes: 0 success, 1 validation or compute failure, 2 bad invocation.
"""

from __future__ import annotations

import functools
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable

import click

from src.entanglement import EntanglementError
from src.fermions import SolverError
from src.model import ModelError
from src.oracle import OracleError
from src.scaling import ScalingError

from .config import build_config
from .fit import outcome_to_dict, run_fit, scatter_table
from .oracle_check import PERTURBABLE, describe, run_oracle_check
from .range_scan import run_range
from .sweep import run_sweep
from .types import (
    GEOMETRIC_ALIAS,
    VERSION,
    Command,
    PipelineError,
    PipelineErrorKind,
    ProgressEvent,
    ProgressStatus,
    RunConfig,
    Stage,
    Table,
    emit,
)
from .writers import PROJECT, header_pairs, render, sibling_path, write_text_atomic

DOMAIN_ERRORS = (ModelError, OracleError, SolverError, EntanglementError, ScalingError, PipelineError)

# click option name -> config key
_OVERRIDES = {
    "gamma": "gamma",
    "sizes": "sizes",
    "lambda_min": "lambda_min",
    "lambda_max": "lambda_max",
    "grid_points": "grid_points",
    "grid_kind": "grid_kind",
    "r_max": "r_max",
    "step": "step",
    "threshold": "threshold",
    "lambda_0": "lambda_0",
    "lambdas": "lambdas",
    "out": "output_path",
    "fmt": "format",
    "threads": "threads",
}


def _progress_printer(command: Command) -> Callable[[ProgressEvent], None]:
    def printer(event: ProgressEvent) -> None:
        suffix = f" ({event.detail})" if event.detail else ""
        print(f"[{command.value}:{event.stage.value}] {event.status.value}{suffix}", file=sys.stderr)

    return printer


def run_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Options shared by every command; all default to None so the config file can fill them."""
    options = [
        click.option("--config", "config_path", type=click.Path(path_type=Path), help="key = value config file"),
        click.option("--out", type=str, help="Output file ('-' for stdout)"),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), help="Output format"),
        click.option("--threads", type=str, help="Worker threads"),
        click.option("--gamma", type=str, help="Anisotropy, or a comma list"),
        click.option("--sizes", type=str, help="Comma list of odd N and/or 'inf'"),
        click.option("--lambda-min", type=str),
        click.option("--lambda-max", type=str),
        click.option("--grid-points", type=str),
        click.option("--grid-kind", type=click.Choice(["linear", "geometric", GEOMETRIC_ALIAS])),
        click.option("--r-max", type=str, help="Largest separation, or 'auto'"),
        click.option("--step", type=str, help="Finite-difference step"),
        click.option("--threshold", type=str, help="Concurrence threshold for the range"),
        click.option("--lambda-0", type=str, help="Reference coupling of the collapse"),
        click.option("--lambdas", type=str, help="Explicit comma list of couplings"),
        click.option("--quiet-progress", is_flag=True, help="Do not print stage progress to stderr"),
    ]
    return functools.reduce(lambda wrapped, option: option(wrapped), reversed(options), func)


def _load(command: Command, options: dict[str, Any]) -> tuple[RunConfig, Callable[[ProgressEvent], None] | None]:
    on_progress = None if options.pop("quiet_progress") else _progress_printer(command)
    config_path = options.pop("config_path")
    overrides = {_OVERRIDES[name]: value for name, value in options.items() if name in _OVERRIDES}
    emit(on_progress, Stage.CONFIG, ProgressStatus.STARTED, None if config_path is None else str(config_path))
    config = build_config(command, config_path, overrides)
    emit(on_progress, Stage.CONFIG, ProgressStatus.FINISHED, None)
    return config, on_progress


def _write(text: str, path: Path | None, on_progress: Callable[[ProgressEvent], None] | None) -> None:
    if path is None:
        click.echo(text, nl=False)
        return
    emit(on_progress, Stage.WRITE, ProgressStatus.STARTED, str(path))
    write_text_atomic(path, text)
    emit(on_progress, Stage.WRITE, ProgressStatus.FINISHED, str(path))


def _guard(command: Command) -> Callable[[Callable[..., None]], Callable[..., None]]:
    """Map configuration errors to exit 2 and domain errors to exit 1."""

    def decorate(func: Callable[..., None]) -> Callable[..., None]:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> None:
            ctx = click.get_current_context()
            try:
                func(*args, **kwargs)
            except PipelineError as exc:
                if exc.kind is PipelineErrorKind.CONFIG_INVALID:
                    click.echo(f"[!] {command.value}: invalid configuration: {exc}", err=True)
                    ctx.exit(2)
                click.echo(f"[!] {command.value} failed: {exc}", err=True)
                ctx.exit(1)
            except DOMAIN_ERRORS as exc:
                click.echo(f"[!] {command.value} failed: {exc}", err=True)
                ctx.exit(1)
            except (OSError, ValueError) as exc:  # pragma: no cover - CLI boundary
                click.echo(f"[!] Unexpected {command.value} failure: {exc}", err=True)
                ctx.exit(1)

        return wrapper

    return decorate


def _emit_table(table: Table, config: RunConfig, on_progress) -> None:
    _write(render(table, config), config.output_path, on_progress)


@click.group()
@click.version_option(VERSION, prog_name=PROJECT)
@click.option("--verbose", is_flag=True, help="Log solver details to stderr")
def cli(verbose: bool) -> None:
    """Two-spin entanglement and critical scaling of the XY chain in a transverse field."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@run_options
@_guard(Command.SWEEP)
def sweep(**options: Any) -> None:
    """Correlators, C(r) and dC/dλ on an (N, λ) grid."""
    config, on_progress = _load(Command.SWEEP, options)
    _emit_table(run_sweep(config, on_progress=on_progress), config, on_progress)


@cli.command()
@click.argument("inputs", nargs=-1, required=True, type=click.Path(path_type=Path))
@run_options
@_guard(Command.FIT)
def fit(inputs: tuple[Path, ...], **options: Any) -> None:
    """Scaling report (λm, θ, log prefactors, ν collapse) from sweep files."""
    config, on_progress = _load(Command.FIT, options)
    outcome = run_fit(config, list(inputs), on_progress=on_progress)
    header = dict(header_pairs(config))
    header["inputs"] = ",".join(str(path) for path in inputs)
    payload = {"header": header, **outcome_to_dict(outcome)}
    _write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", config.output_path, on_progress)

    scatter = scatter_table(outcome.report)
    if scatter is not None and config.output_path is not None:
        target = sibling_path(config.output_path, "collapse", config.format)
        _write(render(scatter, config), target, on_progress)


@cli.command("oracle-check")
@run_options
@click.option("--flip-sign", type=click.Choice(PERTURBABLE), hidden=True)
@_guard(Command.ORACLE_CHECK)
def oracle_check(flip_sign: str | None, **options: Any) -> None:
    """Exact diagonalization against the fermion solver (N ≤ 13)."""
    config, on_progress = _load(Command.ORACLE_CHECK, options)
    result = run_oracle_check(config, flip_sign=flip_sign, on_progress=on_progress)
    _emit_table(result.table, config, on_progress)
    if not result.passed:
        click.echo(f"[!] oracle-check failed: {describe(result.worst)}", err=True)
        click.get_current_context().exit(1)
    click.echo(f"[*] oracle-check PASS: {describe(result.worst)}", err=True)


@cli.command("range")
@run_options
@_guard(Command.RANGE)
def range_(**options: Any) -> None:
    """Entanglement range ξE and total concurrence per γ."""
    config, on_progress = _load(Command.RANGE, options)
    _emit_table(run_range(config, on_progress=on_progress), config, on_progress)


def main(argv: list[str] | None = None) -> int:
    try:
        result = cli.main(args=argv, prog_name=PROJECT, standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    return result if isinstance(result, int) else 0
