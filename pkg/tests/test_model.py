#!/usr/bin/env python3
"""Offline tests for parameter validation and chain-size variants."""

from __future__ import annotations

import math
import unittest

import numpy as np

from src.model import (
    CRITICAL,
    INFINITE,
    FiniteOdd,
    Infinite,
    ModelError,
    ModelErrorKind,
    ModelParams,
    validate,
    validate_gamma,
    validate_lambda,
    validate_size,
)


class SizeValidationTests(unittest.TestCase):
    def test_odd_sizes_and_infinite_markers(self) -> None:
        self.assertEqual(validate_size(5), FiniteOdd(5))
        self.assertEqual(validate_size(7.0), FiniteOdd(7))
        self.assertEqual(validate_size(np.int64(9)), FiniteOdd(9))
        self.assertEqual(validate_size(" 11 "), FiniteOdd(11))
        for token in ("inf", "INF", "infinite", "∞", math.inf, INFINITE):
            with self.subTest(token=token):
                self.assertIs(validate_size(token), INFINITE)

    def test_even_size_is_rejected_with_its_own_kind(self) -> None:
        with self.assertRaises(ModelError) as ctx:
            validate_size(4)
        self.assertEqual(ctx.exception.kind, ModelErrorKind.EVEN_N)
        self.assertEqual(ctx.exception.param, "size")

    def test_small_fractional_and_bool_sizes_are_invalid(self) -> None:
        for raw in (1, -3, 5.5, True, "abc", None, math.nan):
            with self.subTest(raw=raw):
                with self.assertRaises(ModelError) as ctx:
                    validate_size(raw)
                self.assertEqual(ctx.exception.kind, ModelErrorKind.INVALID_SIZE)


class CouplingValidationTests(unittest.TestCase):
    def test_gamma_range(self) -> None:
        self.assertEqual(validate_gamma(1), 1.0)
        self.assertEqual(validate_gamma("0.25"), 0.25)
        for raw in (0.0, -0.5, 1.5):
            with self.subTest(raw=raw):
                with self.assertRaises(ModelError) as ctx:
                    validate_gamma(raw)
                self.assertEqual(ctx.exception.kind, ModelErrorKind.OUT_OF_RANGE_GAMMA)

    def test_lambda_must_be_non_negative_and_finite(self) -> None:
        self.assertEqual(validate_lambda(0), 0.0)
        with self.assertRaises(ModelError) as ctx:
            validate_lambda(-0.1)
        self.assertEqual(ctx.exception.kind, ModelErrorKind.NEGATIVE_LAMBDA)
        for raw in ("nan", math.inf, "x"):
            with self.subTest(raw=raw):
                with self.assertRaises(ModelError) as ctx:
                    validate_lambda(raw)
                self.assertEqual(ctx.exception.kind, ModelErrorKind.NOT_A_NUMBER)


class RecordValidationTests(unittest.TestCase):
    def test_mapping_record_and_idempotence(self) -> None:
        params = validate({"size": "41", "gamma": "0.5", "lambda": "1.1"})
        self.assertEqual(params, ModelParams(size=FiniteOdd(41), gamma=0.5, lam=1.1))
        self.assertEqual(validate(params), params)
        self.assertEqual(validate({"n": "inf", "gamma": 1, "lam": 0}).size, INFINITE)

    def test_missing_field(self) -> None:
        with self.assertRaises(ModelError) as ctx:
            validate({"size": 5, "gamma": 1.0})
        self.assertEqual(ctx.exception.param, "lambda")

    def test_params_helpers(self) -> None:
        params = ModelParams(size=FiniteOdd(11), gamma=1.0, lam=0.5)
        moved = params.at(0.9)
        self.assertEqual(moved.lam, 0.9)
        self.assertEqual(moved.size, params.size)
        self.assertEqual(params.n, 11)
        self.assertFalse(params.is_infinite)
        infinite = ModelParams(size=INFINITE, gamma=1.0, lam=0.5)
        self.assertTrue(infinite.is_infinite)
        self.assertIsNone(infinite.n)
        self.assertEqual(str(INFINITE), "inf")
        self.assertIsInstance(INFINITE, Infinite)
        self.assertEqual(CRITICAL.lambda_c, 1.0)
        self.assertEqual(CRITICAL.nu, 1.0)


if __name__ == "__main__":
    unittest.main()
