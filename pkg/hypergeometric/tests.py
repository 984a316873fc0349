import cmath
import math

import mpmath
import numpy as np
from django.test import SimpleTestCase

from boundary_liouville.exceptions import DegenerateError, DomainError
from hypergeometric.connection import (
    basis_at_infinity,
    basis_at_one,
    basis_at_zero,
    connection_0_to_1,
    connection_inf_to_0,
    connection_inf_to_1,
    value_at_one,
)
from hypergeometric.integrals import (
    SHIFTED_ONE,
    SHIFTED_POWER,
    useful_integral,
    useful_integral_closed_form,
)
from hypergeometric.series import HypergeometricParams, gauss_2f1, series_length


def relative(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


class SeriesTests(SimpleTestCase):
    def test_value_at_zero(self):
        self.assertEqual(gauss_2f1(HypergeometricParams(0.3, 1.7, 2.2), 0.0), 1.0)

    def test_logarithm(self):
        value = gauss_2f1(HypergeometricParams(1, 1, 2), 0.3)
        self.assertLess(relative(value, -math.log(0.7) / 0.3), 1e-12)

    def test_binomial(self):
        value = gauss_2f1(HypergeometricParams(0.7, 1.3, 1.3), 0.4)
        self.assertLess(relative(value, 0.6 ** -0.7), 1e-12)

    def test_complex_against_mpmath(self):
        params = HypergeometricParams(0.3 + 0.2j, -1.1, 2.4 - 0.5j)
        t = 0.5 - 0.4j
        expected = complex(mpmath.hyp2f1(params.a, params.b, params.c, t))
        self.assertLess(relative(gauss_2f1(params, t), expected), 1e-12)

    def test_term_count_grows_with_t(self):
        params = HypergeometricParams(0.3, 0.6, 1.4)
        counts = [series_length(params, t) for t in (0.1, 0.4, 0.7, 0.9)]
        self.assertEqual(counts, sorted(counts))

    def test_outside_disc(self):
        with self.assertRaises(DomainError):
            gauss_2f1(HypergeometricParams(0.3, 0.6, 1.4), 1.2)

    def test_degenerate_c(self):
        with self.assertRaises(DegenerateError):
            HypergeometricParams(0.3, 0.6, -2)


class ConnectionTests(SimpleTestCase):
    def test_zero_to_one_reconstruction(self):
        params = HypergeometricParams(0.3, 0.6, 1.4)
        matrix = connection_0_to_1(params)
        rebuilt = matrix.expand(*basis_at_one(params, 0.5))
        for direct, value in zip(basis_at_zero(params, 0.5), rebuilt):
            self.assertLess(relative(direct, value), 1e-8)
        self.assertGreater(abs(matrix.determinant), 1e-6)

    def test_limit_at_one(self):
        params = HypergeometricParams(0.3, 0.6, 1.4)
        self.assertLess(relative(connection_0_to_1(params).m11, value_at_one(params)), 1e-12)
        expected = complex(mpmath.hyp2f1(0.3, 0.6, 1.4, 1))
        self.assertLess(relative(value_at_one(params), expected), 1e-12)

    def test_random_triples(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            a, b = rng.uniform(-1.5, 1.5, 2)
            c = rng.uniform(0.2, 2.8)
            # near-degenerate triples lose digits in the Γ ratios
            if min(abs(x - round(x)) for x in (c, c - a - b)) < 0.05:
                continue
            params = HypergeometricParams(a, b, c)
            matrix = connection_0_to_1(params)
            for t in (0.4, 0.5, 0.6):
                rebuilt = matrix.expand(*basis_at_one(params, t))
                for direct, value in zip(basis_at_zero(params, t), rebuilt):
                    self.assertLess(abs(direct - value) / max(abs(direct), 1.0), 1e-7, (a, b, c, t))

    def test_infinity_to_zero(self):
        params = HypergeometricParams(0.3, 0.75, 1.4)
        t = -2.0
        matrix = connection_inf_to_0(params)
        near_zero = (
            complex(mpmath.hyp2f1(0.3, 0.75, 1.4, t)),
            complex((-t) ** (1 - 1.4) * mpmath.hyp2f1(1 + 0.3 - 1.4, 1 + 0.75 - 1.4, 2 - 1.4, t)),
        )
        rebuilt = matrix.expand(*near_zero)
        for direct, value in zip(basis_at_infinity(params, t), rebuilt):
            self.assertLess(relative(direct, value), 1e-8)

    def test_composition_through_zero(self):
        params = HypergeometricParams(0.3, 0.75, 1.4)
        t = 1.5 + 0.5j
        matrix = connection_inf_to_1(params, upper_half=True)
        rebuilt = matrix.expand(*basis_at_one(params, t))
        for direct, value in zip(basis_at_infinity(params, t), rebuilt):
            self.assertLess(relative(direct, value), 1e-7)

    def test_entries_finite_off_degeneracies(self):
        for offset in (0.5, 0.25, 0.75):
            matrix = connection_inf_to_0(HypergeometricParams(0.2, 0.2 + offset, 1.3))
            for entry in (matrix.m11, matrix.m12, matrix.m21, matrix.m22):
                self.assertTrue(cmath.isfinite(entry))

    def test_degenerate(self):
        with self.assertRaises(DegenerateError):
            connection_0_to_1(HypergeometricParams(0.3, 0.7, 2.0))
        with self.assertRaises(DegenerateError):
            connection_inf_to_0(HypergeometricParams(0.3, 1.3, 1.5))


class UsefulIntegralTests(SimpleTestCase):
    def test_shifted_one(self):
        expected = math.gamma(-0.6) * math.gamma(0.1) / math.gamma(-0.5)
        self.assertLess(relative(useful_integral(0.5, 1.6, 0.0, SHIFTED_ONE), expected), 1e-8)
        self.assertLess(relative(useful_integral_closed_form(0.5, 1.6), expected), 1e-12)

    def test_angle_independence(self):
        straight = useful_integral(0.5, 1.6, 0.0, SHIFTED_ONE)
        for theta in (math.pi / 2, -math.pi / 3, math.pi, -math.pi):
            self.assertLess(relative(useful_integral(0.5, 1.6, theta, SHIFTED_ONE), straight), 1e-8, theta)

    def test_shifted_power(self):
        expected = useful_integral_closed_form(0.2, 0.9)
        for theta in (0.0, math.pi / 2, math.pi):
            self.assertLess(relative(useful_integral(0.2, 0.9, theta, SHIFTED_POWER), expected), 1e-8, theta)

    def test_parameter_grid(self):
        for g, b in ((-0.5, 1.3), (0.3, 1.5), (0.7, 1.9), (-0.2, 1.1), (0.1, 1.4)):
            expected = useful_integral_closed_form(g, b)
            self.assertLess(relative(useful_integral(g, b, math.pi / 2, SHIFTED_ONE), expected), 1e-7, (g, b))
        for g, b in ((-0.5, -0.3), (0.3, 0.6), (0.7, 0.9), (-0.2, 0.5), (0.1, 0.4)):
            expected = useful_integral_closed_form(g, b)
            self.assertLess(relative(useful_integral(g, b, 0.0, SHIFTED_POWER), expected), 1e-7, (g, b))

    def test_window(self):
        with self.assertRaises(DomainError):
            useful_integral(0.5, 1.2, 0.0, SHIFTED_ONE)
        with self.assertRaises(DomainError):
            useful_integral(0.2, 1.5, 0.0, SHIFTED_POWER)
