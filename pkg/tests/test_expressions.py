from __future__ import annotations

import math
import unittest

import numpy as np

from ksmetric.errors import BadExpression
from ksmetric.harness.expressions import evaluate_expression, parse_expression


class ExpressionTestCase(unittest.TestCase):
    def setUp(self):
        self.line = np.array([[0.0], [0.5], [1.0]])
        self.plane = np.array([[0.0, 1.0], [0.5, 0.5], [1.0, 2.0]])

    def assertValues(self, text, coords, expected):
        values = evaluate_expression(text, coords)
        np.testing.assert_allclose(values, expected, rtol=1e-14, atol=1e-15)

    def test_polynomials(self):
        self.assertValues("x1^2", self.line, [0.0, 0.25, 1.0])
        self.assertValues("3*x1^2 - 2*x1 + 1", self.line, [1.0, 0.75, 2.0])
        self.assertValues("x1*x2 - x2", self.plane, [-1.0, -0.25, 0.0])

    def test_power_binds_tighter_than_unary_minus(self):
        self.assertValues("-x1^2", self.line, [0.0, -0.25, -1.0])
        self.assertValues("(-x1)^2", self.line, [0.0, 0.25, 1.0])
        self.assertValues("2^3^2", self.line, [512.0] * 3)

    def test_functions_and_constants(self):
        self.assertValues("sin(pi*x1)", self.line, np.sin(math.pi * self.line[:, 0]))
        self.assertValues("exp(x1) + cos(x1)", self.line, np.exp(self.line[:, 0]) + np.cos(self.line[:, 0]))
        self.assertValues("e", self.line, [math.e] * 3)

    def test_constant_broadcasts_over_points(self):
        values = evaluate_expression("4", self.plane)
        self.assertEqual(values.tolist(), [4.0, 4.0, 4.0])

    def test_one_dimensional_coordinates(self):
        self.assertValues("x1 + 1", np.array([0.0, 2.0]), [1.0, 3.0])

    def test_rejected_syntax(self):
        for text in ("", "   ", "x1**2", "x0", "y", "abs(x1)", "sin(x1, x1)", "x1 if x1 else 1", "'a'", "True", "x1[0]", "lambda: 1"):
            with self.subTest(text=text):
                with self.assertRaises(BadExpression):
                    parse_expression(text)

    def test_unparseable(self):
        with self.assertRaises(BadExpression):
            parse_expression("x1 + ) 2")

    def test_coordinate_beyond_dimension(self):
        with self.assertRaises(BadExpression):
            evaluate_expression("x2", self.line)

    def test_non_finite_values(self):
        with self.assertRaises(BadExpression):
            evaluate_expression("1/x1", self.line)
        with self.assertRaises(BadExpression):
            evaluate_expression("exp(1000*x1)", self.line)

    def test_exit_code(self):
        with self.assertRaises(BadExpression) as ctx:
            parse_expression("import os")
        self.assertEqual(ctx.exception.exit_code, 2)


if __name__ == "__main__":
    unittest.main()
