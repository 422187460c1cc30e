#!/usr/bin/env python3
"""Offline tests for sweep grids, output writers and the oracle comparison."""

from __future__ import annotations

import json
import math
import tempfile
import unittest
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path
from unittest import mock

import numpy as np

from src.model import INFINITE, FiniteOdd, ModelParams
from src.pipeline import (
    Command,
    GridKind,
    OutputFormat,
    PipelineError,
    PipelineErrorKind,
    ProgressStatus,
    Stage,
    Table,
    build_config,
    evaluate_point,
    format_value,
    render_csv,
    render_json,
    run_oracle_check,
    run_sweep,
    sweep_grid,
    write_text_atomic,
)
from src.pipeline.sweep import sweep_columns, sweep_r_max
from src.pipeline.writers import header_pairs, sibling_path


class FormatTests(unittest.TestCase):
    def test_format_value(self) -> None:
        self.assertEqual(format_value(INFINITE), "inf")
        self.assertEqual(format_value(FiniteOdd(41)), "41")
        self.assertEqual(format_value(True), "true")
        self.assertEqual(format_value(np.int64(7)), "7")
        self.assertEqual(format_value(0.1 + 0.2), "0.3")
        self.assertEqual(format_value(-math.inf), "-inf")
        self.assertEqual(format_value(math.nan), "nan")
        self.assertEqual(format_value("PASS"), "PASS")

    def test_csv_layout(self) -> None:
        config = build_config(Command.SWEEP, None, {"sizes": "11"})
        stamp = datetime(2024, 1, 2, 3, 4, 5, tzinfo=timezone.utc)
        table = Table(columns=("N", "lambda"), rows=[(FiniteOdd(11), 0.5)], summary={"points": 1})
        lines = render_csv(table, header_pairs(config, stamp)).splitlines()
        self.assertEqual(lines[0], "# xy-entanglement")
        self.assertEqual(lines[1], "# command = sweep")
        self.assertEqual(lines[3], "# generated = 2024-01-02T03:04:05+00:00")
        self.assertIn("# points = 1", lines)
        self.assertEqual(lines[-2:], ["N,lambda", "11,0.5"])

    def test_json_layout(self) -> None:
        config = build_config(Command.SWEEP, None, {"sizes": "inf"})
        table = Table(columns=("N", "C_1"), rows=[(INFINITE, 0.25)], summary={"r_max": 4})
        payload = json.loads(render_json(table, header_pairs(config)))
        self.assertEqual(payload["columns"], ["N", "C_1"])
        self.assertEqual(payload["rows"], [["inf", 0.25]])
        self.assertEqual(payload["summary"], {"r_max": 4})
        self.assertEqual(payload["header"]["sizes"], "inf")


class AtomicWriteTests(unittest.TestCase):
    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_write_creates_parents_and_leaves_no_temp_files(self) -> None:
        target = self.tmp / "nested" / "out.csv"
        write_text_atomic(target, "a,b\n")
        write_text_atomic(target, "c,d\n")
        self.assertEqual(target.read_text(encoding="utf-8"), "c,d\n")
        self.assertEqual(sorted(p.name for p in target.parent.iterdir()), ["out.csv"])

    def test_failed_replace_keeps_previous_file(self) -> None:
        target = self.tmp / "out.csv"
        target.write_text("old\n", encoding="utf-8")
        with mock.patch("src.pipeline.writers.os.replace", side_effect=OSError("disk full")):
            with self.assertRaises(OSError):
                write_text_atomic(target, "new\n")
        self.assertEqual(target.read_text(encoding="utf-8"), "old\n")
        self.assertEqual([p.name for p in self.tmp.iterdir()], ["out.csv"])

    def test_sibling_path(self) -> None:
        self.assertEqual(
            sibling_path(Path("runs/fit.json"), "collapse", OutputFormat.CSV), Path("runs/fit_collapse.csv")
        )


class GridTests(unittest.TestCase):
    def test_explicit_couplings_are_sorted_and_unique(self) -> None:
        config = build_config(Command.SWEEP, None, {"lambdas": "1.2,0.5,1.2,0"})
        np.testing.assert_array_equal(sweep_grid(config), [0.0, 0.5, 1.2])

    def test_linear_grid(self) -> None:
        config = build_config(
            Command.SWEEP,
            None,
            {"grid_kind": "linear", "lambda_min": "0", "lambda_max": "2", "grid_points": "5"},
        )
        np.testing.assert_allclose(sweep_grid(config), [0.0, 0.5, 1.0, 1.5, 2.0])

    def test_geometric_grid_stays_in_window_and_hits_critical_point(self) -> None:
        config = build_config(Command.SWEEP, None, {"grid_points": "21"})
        grid = sweep_grid(config)
        self.assertEqual(config.grid_kind, GridKind.GEOMETRIC)
        self.assertAlmostEqual(grid[0], 0.5)
        self.assertAlmostEqual(grid[-1], 1.5)
        self.assertTrue(np.any(grid == 1.0))
        self.assertTrue(np.any(np.isclose(grid, 1.0 + 1e-4)))
        self.assertTrue(np.all(np.diff(grid) > 0.0))

    def test_r_max_follows_smallest_ring(self) -> None:
        config = build_config(Command.SWEEP, None, {"sizes": "7,101,inf", "gamma": "0.25"})
        self.assertEqual(sweep_r_max(config), 3)
        self.assertEqual(sweep_columns(1)[-1], "dC_1")
        self.assertEqual(sweep_columns(2)[-2:], ("dC_1", "d2C_2"))


class SweepTests(unittest.TestCase):
    def test_zero_coupling_rows(self) -> None:
        columns = sweep_columns(2)
        for size in (INFINITE, FiniteOdd(11)):
            row = evaluate_point(ModelParams(size=size, gamma=1.0, lam=0.0), 2, 1e-4)
            values = dict(zip(columns, row))
            with self.subTest(size=size):
                self.assertEqual(values["mz"], 1.0)
                self.assertEqual(values["C_1"], 0.0)
                self.assertEqual(values["C_2"], 0.0)
                self.assertEqual(values["d2C_2"], 0.0)

    def test_sweep_order_and_progress(self) -> None:
        events = []
        config = build_config(
            Command.SWEEP, None, {"sizes": "inf,11", "lambdas": "0.9,0.5", "r_max": "2"}
        )
        table = run_sweep(config, on_progress=events.append)
        self.assertEqual(len(table.rows), 4)
        self.assertEqual([row[0] for row in table.rows], [FiniteOdd(11), FiniteOdd(11), INFINITE, INFINITE])
        self.assertEqual([row[2] for row in table.rows], [0.5, 0.9, 0.5, 0.9])
        self.assertEqual(table.summary["r_max"], 2)
        self.assertEqual(
            [(event.stage, event.status) for event in events],
            [(Stage.EVALUATE, ProgressStatus.STARTED), (Stage.EVALUATE, ProgressStatus.FINISHED)],
        )

    def test_sweep_without_sizes(self) -> None:
        config = replace(build_config(Command.SWEEP), sizes=None)
        with self.assertRaises(PipelineError) as ctx:
            run_sweep(config)
        self.assertEqual(ctx.exception.kind, PipelineErrorKind.CONFIG_INVALID)


class OracleCheckTests(unittest.TestCase):
    def _config(self):
        return build_config(
            Command.ORACLE_CHECK, None, {"sizes": "3,5,7", "gamma": "0.5,1", "lambdas": "0.5,1.2"}
        )

    def test_clean_run_passes(self) -> None:
        result = run_oracle_check(self._config())
        self.assertTrue(result.passed)
        self.assertEqual(result.table.summary["result"], "PASS")
        self.assertEqual(result.table.summary["points"], 12)
        self.assertEqual([row[0] for row in result.table.rows], ["energy", "mz", "gxx", "gyy", "gzz", "rho", "C"])

    def test_flipped_correlator_is_reported(self) -> None:
        result = run_oracle_check(self._config(), flip_sign="gxx")
        self.assertFalse(result.passed)
        self.assertEqual(result.worst.quantity, "gxx")
        status = {row[0]: row[-1] for row in result.table.rows}
        self.assertEqual(status["gxx"], "FAIL")
        self.assertEqual(status["gyy"], "PASS")
        self.assertEqual(status["energy"], "PASS")


if __name__ == "__main__":
    unittest.main()
