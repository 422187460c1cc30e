#!/usr/bin/env python3
"""Offline tests for derivatives, fits, minimum tracking and the finite-size collapse."""

from __future__ import annotations

import math
import unittest

import numpy as np

from src.entanglement import concurrence_at, concurrence_profile
from src.model import INFINITE, FiniteOdd, ModelParams
from src.scaling import (
    DerivativeCurve,
    Extremum,
    LogFit,
    ScalingError,
    ScalingErrorKind,
    collapse,
    critical_grid,
    derivative,
    derivative_family,
    effective_step,
    fit_log,
    fit_loglog,
    fit_nu,
    fit_power,
    locate_minimum,
    maxima_decreasing,
    point_derivative,
    prefactor_ratio_nu,
    report_from_curves,
)

# Synthetic scaling family: Q(x) = a·ln√(1+x²) with x = N^{1/ν}(λ - λm).
SYNTHETIC_NU = 1.5
SYNTHETIC_CENTER = 3.0
SYNTHETIC_AMPLITUDE = -0.3
REFERENCE = 0.5


def _synthetic_curve(n: int) -> DerivativeCurve:
    scale = n ** (1.0 / SYNTHETIC_NU)
    grid = np.sort(np.append(SYNTHETIC_CENTER + np.linspace(-8.0, 8.0, 401) / scale, REFERENCE))
    x = scale * (grid - SYNTHETIC_CENTER)
    values = SYNTHETIC_AMPLITUDE * 0.5 * np.log1p(x * x)
    return DerivativeCurve(
        order=1, lambda_grid=grid, values=values, step=1e-4, r=1, size=FiniteOdd(n)
    )


def _synthetic_family(sizes: tuple[int, ...]) -> dict[int, DerivativeCurve]:
    return {n: _synthetic_curve(n) for n in sizes}


class DerivativeTests(unittest.TestCase):
    def test_quadratic_is_differentiated_exactly(self) -> None:
        square = lambda lam: lam * lam  # noqa: E731
        self.assertAlmostEqual(point_derivative(square, 0.7, 1, 1e-3), 1.4, places=9)
        self.assertAlmostEqual(point_derivative(square, 0.7, 2, 1e-3), 2.0, places=5)

    def test_one_sided_stencil_at_zero_coupling(self) -> None:
        calls: list[float] = []

        def cubic(lam: float) -> float:
            calls.append(lam)
            return lam**3 + lam * lam

        self.assertAlmostEqual(point_derivative(cubic, 0.0, 1, 1e-3), 0.0, places=6)
        self.assertAlmostEqual(point_derivative(cubic, 0.0, 2, 1e-3), 2.0, places=4)
        self.assertTrue(all(lam >= 0.0 for lam in calls))

    def test_richardson_accuracy(self) -> None:
        self.assertAlmostEqual(point_derivative(math.sin, 0.3, 1, 1e-3), math.cos(0.3), delta=1e-10)

    def test_order_is_checked(self) -> None:
        with self.assertRaises(ValueError):
            point_derivative(math.sin, 0.3, 3, 1e-3)

    def test_step_caps(self) -> None:
        self.assertAlmostEqual(effective_step(FiniteOdd(101), 0.9, 1e-2), 0.1 / 101)
        self.assertEqual(effective_step(FiniteOdd(11), 0.9, 1e-4), 1e-4)
        self.assertEqual(effective_step(INFINITE, 0.5, 1e-4), 1e-4)
        self.assertAlmostEqual(effective_step(INFINITE, 1.0 + 1e-4, 1e-4), 1e-5, delta=1e-12)

    def test_step_too_small_next_to_the_critical_point(self) -> None:
        with self.assertRaises(ScalingError) as ctx:
            effective_step(INFINITE, 1.0 + 1e-13)
        self.assertEqual(ctx.exception.kind, ScalingErrorKind.STEP_TOO_SMALL)


    def test_flat_stencil_gives_zero(self) -> None:
        self.assertEqual(point_derivative(lambda lam: 0.0, 0.5, 2, 1e-4), 0.0)
        self.assertEqual(point_derivative(lambda lam: 0.0, 0.0, 1, 1e-4), 0.0)

    def test_variation_below_noise_floor_raises(self) -> None:
        with self.assertRaises(ScalingError) as ctx:
            point_derivative(lambda lam: 1e-14 * lam, 0.5, 1, 1e-4)
        self.assertEqual(ctx.exception.kind, ScalingErrorKind.STEP_TOO_SMALL)

    def test_second_derivative_of_next_nearest_concurrence_at_zero_coupling(self) -> None:
        for size in (FiniteOdd(11), INFINITE):
            params = ModelParams(size=size, gamma=1.0, lam=0.0)

            def c2(lam: float) -> float:
                return concurrence_at(params.at(lam), 2)

            with self.subTest(size=size):
                coarse = point_derivative(c2, 0.0, 2, 1e-4)
                fine = point_derivative(c2, 0.0, 2, 5e-5)
                self.assertEqual(coarse, 0.0)
                self.assertLess(abs(coarse - fine), 1e-6)

    def test_step_halving_changes_first_derivative_below_tolerance(self) -> None:
        cases = [(INFINITE, lam) for lam in (0.5, 0.8, 1.2, 1.5)]
        cases += [(FiniteOdd(41), lam) for lam in (0.5, 0.9, 1.3)]
        for size, lam in cases:
            params = ModelParams(size=size, gamma=1.0, lam=lam)

            def c1(x: float) -> float:
                return concurrence_at(params.at(x), 1)

            h = effective_step(size, lam)
            with self.subTest(size=size, lam=lam):
                self.assertLess(
                    abs(point_derivative(c1, lam, 1, h) - point_derivative(c1, lam, 1, 0.5 * h)), 1e-6
                )

    def test_derivative_of_a_profile(self) -> None:
        params = ModelParams(size=FiniteOdd(41), gamma=1.0, lam=1.0)
        grid = np.array([0.5, 0.7, 0.9])
        dcurve = derivative(concurrence_profile(params, 2, grid), 1, 1)
        self.assertEqual((dcurve.order, dcurve.r, dcurve.size), (1, 1, FiniteOdd(41)))
        np.testing.assert_array_equal(dcurve.lambda_grid, grid)
        delta = 1e-4
        for lam, value in zip(grid, dcurve.values):
            with self.subTest(lam=lam):
                plus = concurrence_at(params.at(lam + delta), 1)
                minus = concurrence_at(params.at(lam - delta), 1)
                self.assertAlmostEqual(value, (plus - minus) / (2.0 * delta), delta=1e-6)
                self.assertAlmostEqual(dcurve.evaluator(lam), value, places=10)


class MinimumTests(unittest.TestCase):
    def test_parabola_refinement(self) -> None:
        grid = np.linspace(0.0, 2.0, 16)
        minimum = locate_minimum(grid, 3.0 + 2.0 * (grid - 1.2) ** 2)
        self.assertAlmostEqual(minimum.lam, 1.2, places=9)
        self.assertAlmostEqual(minimum.value, 3.0, places=9)

    def test_evaluator_refinement(self) -> None:
        func = lambda lam: 3.0 + 2.0 * (lam - 1.23) ** 2  # noqa: E731
        grid = np.linspace(0.0, 2.0, 11)
        minimum = locate_minimum(grid, func(grid), func)
        self.assertAlmostEqual(minimum.lam, 1.23, delta=1e-6)
        self.assertLessEqual(minimum.value, float(np.min(func(grid))))

    def test_edge_minimum_is_rejected(self) -> None:
        grid = np.linspace(0.0, 1.0, 5)
        with self.assertRaises(ScalingError) as ctx:
            locate_minimum(grid, grid.copy())
        self.assertEqual(ctx.exception.kind, ScalingErrorKind.NO_INTERIOR_MINIMUM)

    def test_maxima_decreasing(self) -> None:
        peaks = {41: Extremum(1.0, 0.02), 101: Extremum(1.0, 0.019), 401: Extremum(1.0, 0.018)}
        self.assertTrue(maxima_decreasing(peaks))
        self.assertFalse(maxima_decreasing({**peaks, 401: Extremum(1.0, 0.03)}))


class FitTests(unittest.TestCase):
    def test_log_fit_recovers_prefactor(self) -> None:
        x = np.geomspace(1e-5, 1e-2, 10)
        fit = fit_log(x, -0.27 * np.log(x) + 0.1)
        self.assertAlmostEqual(fit.slope, -0.27, places=10)
        self.assertAlmostEqual(fit.intercept, 0.1, places=9)
        self.assertEqual(fit.points, 10)
        self.assertLess(fit.residual, 1e-12)

    def test_loglog_fit(self) -> None:
        fit = fit_loglog([1.0, 0.5, 0.25, 0.125], [2.0, 4.0, 8.0, 16.0])
        self.assertAlmostEqual(fit.slope, -1.0, places=10)

    def test_fit_errors(self) -> None:
        cases = [
            (([1.0, 2.0], [0.0, 1.0]), ScalingErrorKind.TOO_FEW_POINTS),
            (([0.0, 1.0, 2.0], [0.0, 1.0, 2.0]), ScalingErrorKind.NOT_POSITIVE_ABSCISSA),
            (([2.0, 2.0, 2.0], [0.0, 1.0, 2.0]), ScalingErrorKind.DEGENERATE_DESIGN),
        ]
        for (x, y), kind in cases:
            with self.subTest(kind=kind):
                with self.assertRaises(ScalingError) as ctx:
                    fit_log(x, y)
                self.assertEqual(ctx.exception.kind, kind)

    def test_power_fit(self) -> None:
        sizes = np.array([11.0, 41.0, 101.0, 401.0])
        fit = fit_power(sizes, -5.0 * sizes**-2.0)
        self.assertAlmostEqual(fit.theta, 2.0, places=10)
        self.assertAlmostEqual(fit.amplitude, 5.0, places=8)
        self.assertEqual(fit.sign, -1)
        with self.assertRaises(ScalingError) as ctx:
            fit_power([11, 41, 101], [0.1, -0.1, 0.2])
        self.assertEqual(ctx.exception.kind, ScalingErrorKind.SIGN_CHANGE)

    def test_prefactor_ratio(self) -> None:
        self.assertAlmostEqual(prefactor_ratio_nu(-0.2702, 0.2702), 1.0)
        with self.assertRaises(ScalingError) as ctx:
            prefactor_ratio_nu(0.0, 0.27)
        self.assertEqual(ctx.exception.kind, ScalingErrorKind.ZERO_DENOMINATOR)


class CollapseTests(unittest.TestCase):
    def test_single_curve_collapses_trivially(self) -> None:
        curves = _synthetic_family((101,))
        result = collapse(curves, {101: SYNTHETIC_CENTER}, REFERENCE, 1.0)
        self.assertEqual(result.residual, 0.0)
        self.assertEqual(result.sizes, (101,))
        self.assertEqual(result.scatter.shape[1], 3)

    def test_spread_is_relative_to_the_full_dynamic_range(self) -> None:
        curves = _synthetic_family((101,))
        result = collapse(curves, {101: SYNTHETIC_CENTER}, REFERENCE, 1.0)
        self.assertAlmostEqual(result.dynamic_range, float(np.ptp(curves[101].values)), places=12)
        self.assertEqual(result.spread, 0.0)

    def test_reference_must_be_sampled(self) -> None:
        curves = _synthetic_family((101,))
        with self.assertRaises(ScalingError) as ctx:
            collapse(curves, {101: SYNTHETIC_CENTER}, 0.25, 1.0)
        self.assertEqual(ctx.exception.kind, ScalingErrorKind.REFERENCE_NOT_SAMPLED)

    def test_fit_nu_recovers_synthetic_exponent(self) -> None:
        sizes = (101, 401, 1601)
        curves = _synthetic_family(sizes)
        centers = {n: SYNTHETIC_CENTER for n in sizes}
        fit = fit_nu(curves, centers, REFERENCE, amplitude=SYNTHETIC_AMPLITUDE)
        self.assertAlmostEqual(fit.nu, SYNTHETIC_NU, delta=0.02)
        wrong = collapse(curves, centers, REFERENCE, 1.0, amplitude=SYNTHETIC_AMPLITUDE)
        right = collapse(curves, centers, REFERENCE, SYNTHETIC_NU, amplitude=SYNTHETIC_AMPLITUDE)
        self.assertLess(right.residual, wrong.residual)
        self.assertLess(right.spread, 0.01)
        self.assertLess(right.spread, wrong.spread)

    def test_fit_nu_needs_three_sizes(self) -> None:
        curves = _synthetic_family((101, 401))
        with self.assertRaises(ScalingError) as ctx:
            fit_nu(curves, {n: SYNTHETIC_CENTER for n in curves}, REFERENCE)
        self.assertEqual(ctx.exception.kind, ScalingErrorKind.TOO_FEW_SIZES)


class ReportTests(unittest.TestCase):
    def test_single_size_report_lists_omissions(self) -> None:
        curves = _synthetic_family((101,))
        report = report_from_curves(
            curves, gamma=1.0, lambda_0=REFERENCE, minima={101: Extremum(SYNTHETIC_CENTER, 0.0)}
        )
        self.assertIsNone(report.theta)
        self.assertIsNone(report.collapse_residual)
        for key in ("theta", "finite_slope", "infinite_slope", "nu_ratio", "collapse"):
            with self.subTest(key=key):
                self.assertIn(key, report.omitted)

    def test_full_report_on_synthetic_family(self) -> None:
        sizes = (101, 401, 1601)
        curves = _synthetic_family(sizes)
        minima = {n: Extremum(SYNTHETIC_CENTER, -0.27 * math.log(n)) for n in sizes}
        infinite = LogFit(slope=SYNTHETIC_AMPLITUDE, intercept=0.0, residual=0.0, stderr=0.0, points=10)
        report = report_from_curves(
            curves, gamma=1.0, lambda_0=REFERENCE, infinite_slope=infinite, minima=minima
        )
        self.assertAlmostEqual(report.finite_slope.slope, -0.27, places=10)
        self.assertAlmostEqual(report.nu_ratio, 0.3 / 0.27, places=8)
        self.assertAlmostEqual(report.nu_fit.nu, SYNTHETIC_NU, delta=0.02)
        self.assertIsNotNone(report.q_samples)
        self.assertNotIn("collapse", report.omitted)

    def test_critical_grid(self) -> None:
        grid = critical_grid(points_per_side=10)
        self.assertTrue(np.all(np.diff(grid) > 0.0))
        self.assertTrue(np.any(np.isclose(grid, 0.5)))
        self.assertTrue(np.any(np.isclose(grid, 1.0)))
        self.assertGreaterEqual(grid[0], 0.0)

    def test_minimum_approaches_critical_point_and_deepens(self) -> None:
        _, minima = derivative_family(1.0, [41, 101], points_per_side=16)
        self.assertLess(abs(minima[101].lam - 1.0), abs(minima[41].lam - 1.0))
        self.assertLess(minima[101].value, minima[41].value)
        self.assertLess(minima[101].value, 0.0)


if __name__ == "__main__":
    unittest.main()
