"""``fit``: scaling analysis of previously written sweep files.

The sweep's ``dC_1`` column feeds the nearest-neighbour report; ``C_2`` and
``d2C_2`` (when present) feed the next-nearest-neighbour section.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from src.model import CRITICAL, INFINITE, ChainSize, FiniteOdd, validate_size
from src.scaling import (
    C2Report,
    DerivativeCurve,
    Extremum,
    LogFit,
    ScalingError,
    ScalingReport,
    fit_log,
    infinite_log_slope,
    locate_minimum,
    maxima_decreasing,
    report_from_curves,
)
from src.scaling.analysis import FIRST_DERIVATIVE_WINDOW, SECOND_DERIVATIVE_WINDOW

from .types import (
    PipelineError,
    PipelineErrorKind,
    ProgressCallback,
    ProgressStatus,
    RunConfig,
    Stage,
    Table,
    emit,
)

logger = logging.getLogger(__name__)

MIN_INFINITE_POINTS = 3


@dataclass
class SweepData:
    """Sweep rows regrouped as ``series[gamma][size] -> {column: values sorted by λ}``."""

    columns: tuple[str, ...]
    series: dict[float, dict[ChainSize, dict[str, np.ndarray]]] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class FitOutcome:
    report: ScalingReport
    c2: C2Report | None
    omitted: Mapping[str, str]
    slope_sources: Mapping[str, str]


def _read_table(path: Path) -> tuple[list[str], list[list[str]]]:
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        payload = json.loads(text)
        try:
            return list(payload["columns"]), [[str(v) for v in row] for row in payload["rows"]]
        except (KeyError, TypeError) as exc:
            raise PipelineError(
                PipelineErrorKind.INPUT_INVALID, f"{path}: not a sweep JSON file", cause=exc
            ) from exc
    lines = [line for line in text.splitlines() if line.strip() and not line.startswith("#")]
    reader = csv.reader(lines)
    try:
        columns = next(reader)
    except StopIteration as exc:
        raise PipelineError(PipelineErrorKind.INPUT_INVALID, f"{path}: no column row") from exc
    return columns, [row for row in reader]


def read_sweeps(paths: Sequence[Path]) -> SweepData:
    """Merge sweep files; later files add sizes or couplings to earlier ones."""
    if not paths:
        raise PipelineError(PipelineErrorKind.INPUT_INVALID, "no sweep files given")
    collected: dict[float, dict[ChainSize, dict[float, dict[str, float]]]] = {}
    shared: set[str] | None = None
    for path in map(Path, paths):
        if not path.is_file():
            raise PipelineError(PipelineErrorKind.INPUT_INVALID, f"sweep file not found: {path}")
        columns, rows = _read_table(path)
        missing = {"N", "gamma", "lambda", "dC_1"} - set(columns)
        if missing:
            raise PipelineError(
                PipelineErrorKind.INPUT_INVALID,
                f"{path}: missing columns {', '.join(sorted(missing))}",
            )
        shared = set(columns) if shared is None else shared & set(columns)
        for line_no, row in enumerate(rows, start=1):
            if len(row) != len(columns):
                raise PipelineError(
                    PipelineErrorKind.INPUT_INVALID,
                    f"{path}: row {line_no} has {len(row)} fields, expected {len(columns)}",
                )
            record = dict(zip(columns, row))
            try:
                size = validate_size(record["N"] if record["N"] == "inf" else int(record["N"]))
                values = {key: float(value) for key, value in record.items() if key != "N"}
            except ValueError as exc:
                raise PipelineError(
                    PipelineErrorKind.INPUT_INVALID, f"{path}: row {line_no}: {exc}", cause=exc
                ) from exc
            by_lambda = collected.setdefault(values["gamma"], {}).setdefault(size, {})
            by_lambda[values["lambda"]] = values
    data = SweepData(columns=tuple(sorted(shared or ())))
    for gamma, by_size in collected.items():
        for size, by_lambda in by_size.items():
            lambdas = sorted(by_lambda)
            data.series.setdefault(gamma, {})[size] = {
                column: np.array([by_lambda[lam][column] for lam in lambdas])
                for column in data.columns
                if column != "N"
            }
    logger.info(
        "read %d sweep file(s): %s",
        len(paths),
        {gamma: sorted(str(size) for size in sizes) for gamma, sizes in data.series.items()},
    )
    return data


def _select(data: SweepData, config: RunConfig) -> tuple[dict[ChainSize, dict[str, np.ndarray]], list[int]]:
    gamma = config.gamma
    matches = [g for g in data.series if math.isclose(g, gamma, rel_tol=0.0, abs_tol=1e-12)]
    if not matches:
        raise PipelineError(
            PipelineErrorKind.MISSING_SERIES, f"no rows with gamma={gamma:g} in the inputs"
        )
    series = data.series[matches[0]]
    available = sorted(size.n for size in series if isinstance(size, FiniteOdd))
    if config.sizes is None:
        sizes = available
    else:
        sizes = []
        for size in config.sizes:
            if not isinstance(size, FiniteOdd):
                continue
            if size not in series:
                raise PipelineError(
                    PipelineErrorKind.MISSING_SERIES,
                    f"N={size.n} (gamma={gamma:g}) is absent from the inputs",
                )
            sizes.append(size.n)
        sizes.sort()
    if not sizes:
        raise PipelineError(
            PipelineErrorKind.MISSING_SERIES, f"no finite sizes for gamma={gamma:g} in the inputs"
        )
    return series, sizes


def _curves(
    series: Mapping[ChainSize, Mapping[str, np.ndarray]], sizes: Sequence[int], column: str, r: int, order: int, step: float
) -> dict[int, DerivativeCurve]:
    return {
        n: DerivativeCurve(
            order=order,
            lambda_grid=series[FiniteOdd(n)]["lambda"],
            values=series[FiniteOdd(n)][column],
            step=step,
            r=r,
            size=FiniteOdd(n),
        )
        for n in sizes
    }


def _infinite_slope(
    series: Mapping[ChainSize, Mapping[str, np.ndarray]],
    config: RunConfig,
    column: str,
    r: int,
    order: int,
) -> tuple[LogFit, str]:
    """Log prefactor from infinite-chain rows below λc, else computed afresh."""
    window = FIRST_DERIVATIVE_WINDOW if order == 1 else SECOND_DERIVATIVE_WINDOW
    rows = series.get(INFINITE)
    if rows is not None and column in rows:
        offsets = CRITICAL.lambda_c - rows["lambda"]
        inside = (offsets >= window[0]) & (offsets <= window[1])
        if np.count_nonzero(inside) >= MIN_INFINITE_POINTS:
            return fit_log(offsets[inside], rows[column][inside]), "input"
    return infinite_log_slope(config.gamma, r=r, order=order, step=config.step), "computed"


def _c2_section(
    series: Mapping[ChainSize, Mapping[str, np.ndarray]],
    sizes: Sequence[int],
    config: RunConfig,
    omitted: dict[str, str],
    sources: dict[str, str],
) -> C2Report | None:
    if "C_2" not in next(iter(series.values())) or "d2C_2" not in next(iter(series.values())):
        omitted["c2"] = "inputs have no C_2 / d2C_2 columns"
        return None
    try:
        peaks: dict[int, Extremum] = {}
        for n in sizes:
            rows = series[FiniteOdd(n)]
            peak = locate_minimum(rows["lambda"], -rows["C_2"], what=f"C(2) N={n}")
            peaks[n] = Extremum(lam=peak.lam, value=-peak.value)
        slope, sources["c2_infinite_slope"] = _infinite_slope(series, config, "d2C_2", 2, 2)
        report = report_from_curves(
            _curves(series, sizes, "d2C_2", 2, 2, config.step),
            gamma=config.gamma,
            lambda_0=config.lambda_0,
            infinite_slope=slope,
        )
    except ScalingError as exc:
        omitted["c2"] = str(exc)
        return None
    return C2Report(peaks=peaks, maxima_decreasing=maxima_decreasing(peaks), scaling=report)


def run_fit(
    config: RunConfig,
    inputs: Sequence[Path],
    *,
    on_progress: ProgressCallback | None = None,
) -> FitOutcome:
    emit(on_progress, Stage.EVALUATE, ProgressStatus.STARTED, f"{len(inputs)} input file(s)")
    data = read_sweeps(inputs)
    series, sizes = _select(data, config)
    emit(on_progress, Stage.EVALUATE, ProgressStatus.FINISHED, "sizes " + ",".join(map(str, sizes)))

    emit(on_progress, Stage.FIT, ProgressStatus.STARTED, f"gamma={config.gamma:g}")
    omitted: dict[str, str] = {}
    sources: dict[str, str] = {}
    try:
        slope, sources["infinite_slope"] = _infinite_slope(series, config, "dC_1", 1, 1)
        report = report_from_curves(
            _curves(series, sizes, "dC_1", 1, 1, config.step),
            gamma=config.gamma,
            lambda_0=config.lambda_0,
            infinite_slope=slope,
        )
        c2 = _c2_section(series, sizes, config, omitted, sources)
    except Exception as exc:
        emit(on_progress, Stage.FIT, ProgressStatus.FAILED, str(exc))
        raise
    emit(on_progress, Stage.FIT, ProgressStatus.FINISHED, None)
    return FitOutcome(report=report, c2=c2, omitted=omitted, slope_sources=sources)


def _number(value: float | None) -> float | str | None:
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    return float(f"{value:.12g}")


def _log_fit(fit: LogFit | None) -> dict[str, object] | None:
    if fit is None:
        return None
    return {
        "slope": _number(fit.slope),
        "intercept": _number(fit.intercept),
        "residual": _number(fit.residual),
        "stderr": _number(fit.stderr),
        "points": fit.points,
    }


def report_to_dict(report: ScalingReport) -> dict[str, object]:
    """JSON-ready view of a report; absent fields stay null with their reason in ``omitted``."""
    theta = report.theta
    nu_fit = report.nu_fit
    result = report.collapse
    return {
        "gamma": _number(report.gamma),
        "r": report.r,
        "order": report.order,
        "lambda_0": _number(report.lambda_0),
        "lambda_m": [
            {"N": n, "lambda_m": _number(ext.lam), "value": _number(ext.value)}
            for n, ext in sorted(report.lambda_m_per_n.items())
        ],
        "theta": None
        if theta is None
        else {
            "theta": _number(theta.theta),
            "amplitude": _number(theta.amplitude),
            "sign": theta.sign,
            "residual": _number(theta.residual),
            "stderr": _number(theta.stderr),
        },
        "finite_slope": _log_fit(report.finite_slope),
        "infinite_slope": _log_fit(report.infinite_slope),
        "nu_ratio": _number(report.nu_ratio),
        "nu_fit": None
        if nu_fit is None
        else {
            "nu": _number(nu_fit.nu),
            "stderr": _number(nu_fit.stderr),
            "residual": _number(nu_fit.residual),
        },
        "collapse_residual": _number(report.collapse_residual),
        "collapse_spread": None if result is None else _number(result.spread),
        "collapse_dynamic_range": None if result is None else _number(result.dynamic_range),
        "q_samples": None
        if result is None
        else [[_number(x), _number(q)] for x, q in result.q_samples],
        "omitted": dict(report.omitted),
    }


def outcome_to_dict(outcome: FitOutcome) -> dict[str, object]:
    payload: dict[str, object] = {"report": report_to_dict(outcome.report)}
    if outcome.c2 is not None:
        payload["c2"] = {
            "peaks": [
                {"N": n, "lambda": _number(ext.lam), "c2_max": _number(ext.value)}
                for n, ext in sorted(outcome.c2.peaks.items())
            ],
            "maxima_decreasing": outcome.c2.maxima_decreasing,
            "report": report_to_dict(outcome.c2.scaling),
        }
    else:
        payload["c2"] = None
    payload["omitted"] = dict(outcome.omitted)
    payload["slope_sources"] = dict(outcome.slope_sources)
    return payload


def scatter_table(report: ScalingReport) -> Table | None:
    """Collapsed points (x, y, N) for plotting, None when the collapse was omitted."""
    if report.collapse is None:
        return None
    rows = [(float(x), float(y), int(n)) for x, y, n in report.collapse.scatter]
    return Table(
        columns=("x", "y", "N"),
        rows=rows,
        summary={"nu": report.collapse.nu, "residual": report.collapse.residual},
    )
