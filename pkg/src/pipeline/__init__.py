"""Command-line pipeline: sweeps, scaling fits, oracle checks and range scans.

CLI entry: ``python3 -m src.pipeline`` or the root ``cli.py``.
"""

from .config import build_config, default_config, echo_config, read_config_file
from .fit import FitOutcome, read_sweeps, report_to_dict, run_fit, scatter_table
from .oracle_check import Deviation, OracleCheckResult, run_oracle_check
from .range_scan import run_range
from .sweep import evaluate_point, run_sweep, sweep_grid
from .types import (
    VERSION,
    Command,
    GridKind,
    OutputFormat,
    PipelineError,
    PipelineErrorKind,
    ProgressEvent,
    ProgressStatus,
    RunConfig,
    Stage,
    Table,
)
from .writers import format_value, render_csv, render_json, write_text_atomic

__all__ = [
    "Command",
    "Deviation",
    "FitOutcome",
    "GridKind",
    "OracleCheckResult",
    "OutputFormat",
    "PipelineError",
    "PipelineErrorKind",
    "ProgressEvent",
    "ProgressStatus",
    "RunConfig",
    "Stage",
    "Table",
    "VERSION",
    "build_config",
    "default_config",
    "echo_config",
    "evaluate_point",
    "format_value",
    "read_config_file",
    "read_sweeps",
    "render_csv",
    "render_json",
    "report_to_dict",
    "run_fit",
    "run_oracle_check",
    "run_range",
    "run_sweep",
    "scatter_table",
    "sweep_grid",
    "write_text_atomic",
]
