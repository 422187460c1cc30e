"""CSV / JSON rendering and atomic output files."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping

import numpy as np

from src.model import FiniteOdd, Infinite

from .config import echo_config
from .types import VERSION, OutputFormat, RunConfig, Table

PROJECT = "xy-entanglement"


def format_value(value: object) -> str:
    """12 significant digits, ``inf`` for the infinite chain, plain ints."""
    if isinstance(value, Infinite):
        return "inf"
    if isinstance(value, FiniteOdd):
        return str(value.n)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return f"{value:.12g}"
    return str(value)


def _json_value(value: object) -> object:
    text = format_value(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return int(value)
    if isinstance(value, (float, np.floating)) and math.isfinite(float(value)):
        return float(text)
    return text


def header_pairs(config: RunConfig, generated: datetime | None = None) -> list[tuple[str, str]]:
    stamp = (generated or datetime.now(timezone.utc)).isoformat(timespec="seconds")
    return [
        ("command", config.command.value),
        ("version", VERSION),
        ("generated", stamp),
        *echo_config(config),
    ]


def render_csv(table: Table, header: list[tuple[str, str]]) -> str:
    buffer = io.StringIO()
    buffer.write(f"# {PROJECT}\n")
    for key, value in header:
        buffer.write(f"# {key} = {value}\n")
    for key, value in table.summary.items():
        buffer.write(f"# {key} = {format_value(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(value) for value in row])
    return buffer.getvalue()


def render_json(table: Table, header: list[tuple[str, str]], extra: Mapping[str, object] | None = None) -> str:
    payload: dict[str, object] = {
        "header": dict(header),
        "summary": {key: _json_value(value) for key, value in table.summary.items()},
        "columns": list(table.columns),
        "rows": [[_json_value(value) for value in row] for row in table.rows],
    }
    if extra:
        payload.update(extra)
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render(table: Table, config: RunConfig, fmt: OutputFormat | None = None) -> str:
    header = header_pairs(config)
    if (fmt or config.format) is OutputFormat.JSON:
        return render_json(table, header)
    return render_csv(table, header)


def _unique_temp_sibling(path: Path) -> Path:
    return path.with_name(f".{path.name}.tmp-{os.getpid()}-{uuid.uuid4().hex}")


def write_text_atomic(path: Path, text: str) -> Path:
    """Write through a temp sibling and rename; a failed write leaves nothing behind."""
    path = Path(path).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = _unique_temp_sibling(path)
    try:
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    return path


def sibling_path(path: Path, suffix: str, fmt: OutputFormat) -> Path:
    """``out.csv`` → ``out_<suffix>.<fmt>`` next to it."""
    return path.with_name(f"{path.stem}_{suffix}.{fmt.value}")
