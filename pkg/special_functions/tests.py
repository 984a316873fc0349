import cmath
import math

import mpmath
import numpy as np
from django.test import SimpleTestCase

from boundary_liouville.exceptions import DomainError, PoleError
from special_functions.beta_laws import beta10_log_moment, beta22_log_moment
from special_functions.coupling import LiouvilleCoupling
from special_functions.double_gamma import (
    double_gamma,
    double_gamma_shift_factor,
    log_double_gamma,
    log_double_gamma_extended,
    log_shift_factor,
)
from special_functions.double_sine import (
    double_sine,
    double_sine_asymptotic,
    log_double_sine_array,
    log_double_sine_asymptotic,
)
from special_functions.gamma import complex_log_gamma
from special_functions.lattice import PoleReport, pole_guard, pole_report


def relative(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def same_log(a, b):
    # logs agree up to a multiple of 2πi
    return abs(cmath.exp(complex(a) - complex(b)) - 1.0)


class CouplingTests(SimpleTestCase):
    def test_derived_constants(self):
        coupling = LiouvilleCoupling(1.0)
        self.assertAlmostEqual(coupling.q_charge, 2.5)
        self.assertAlmostEqual(coupling.central_charge, 1.0 + 6.0 * 2.5 ** 2)
        self.assertAlmostEqual(coupling.b * coupling.big_b, 1.0)

    def test_q_charge_decreases_to_two(self):
        gammas = np.linspace(0.05, 1.999, 60)
        charges = [LiouvilleCoupling(float(gamma)).q_charge for gamma in gammas]
        self.assertTrue(all(q > 2.0 for q in charges))
        self.assertTrue(all(later < earlier for earlier, later in zip(charges, charges[1:])))
        self.assertAlmostEqual(LiouvilleCoupling(math.sqrt(2.0)).q_charge, 1.5 * math.sqrt(2.0))
        self.assertLess(LiouvilleCoupling(1.999).q_charge - 2.0, 1e-6)

    def test_gamma_out_of_range(self):
        for gamma in (0.0, 2.0, -1.0, float('nan')):
            with self.assertRaises(DomainError):
                LiouvilleCoupling(gamma)


class LatticeTests(SimpleTestCase):
    def test_origin_is_a_pole(self):
        report = pole_report(0.0, LiouvilleCoupling(1.0))
        self.assertTrue(report.is_pole)
        self.assertEqual(report.lattice_indices, (0, 0))

    def test_nearest_pole(self):
        coupling = LiouvilleCoupling(1.3)
        report = pole_report(-coupling.b - coupling.big_b + 0.01j, coupling)
        self.assertFalse(report.is_pole)
        self.assertAlmostEqual(report.distance, 0.01)
        n, m = report.lattice_indices
        self.assertAlmostEqual(report.nearest_pole.real, -n * coupling.b - m * coupling.big_b)

    def test_guard_widens_tolerance(self):
        coupling = LiouvilleCoupling(1.0)
        self.assertFalse(pole_report(-0.5005, coupling).is_pole)
        with pole_guard(1e-3):
            self.assertTrue(pole_report(-0.5005, coupling).is_pole)
        self.assertFalse(pole_report(-0.5005, coupling).is_pole)


class LogGammaTests(SimpleTestCase):
    def test_trivial_values(self):
        self.assertAlmostEqual(abs(complex_log_gamma(1.0)), 0.0, places=14)
        self.assertAlmostEqual(complex_log_gamma(0.5).real, 0.5 * math.log(math.pi), places=14)

    def test_against_mpmath(self):
        z = 3.7 + 1.2j
        expected = complex(mpmath.loggamma(mpmath.mpc(3.7, 1.2)))
        self.assertLess(abs(complex_log_gamma(z) - expected), 1e-12)

    def test_negative_real_axis_matches_gamma(self):
        value = cmath.exp(complex_log_gamma(-1.5))
        self.assertLess(relative(value, math.gamma(-1.5)), 1e-13)

    def test_poles(self):
        for z in (0, -1, -2, -7):
            with self.assertRaises(PoleError):
                complex_log_gamma(z)


class DoubleGammaTests(SimpleTestCase):
    def test_value_at_half_q(self):
        for gamma in (0.5, 1.0, 1.5, 1.9):
            coupling = LiouvilleCoupling(gamma)
            self.assertLess(abs(log_double_gamma(coupling.q_charge / 2, coupling)), 1e-10)
            self.assertLess(abs(double_gamma(coupling.q_charge / 2, coupling) - 1.0), 1e-10)

    def test_one_shift_from_half_q(self):
        coupling = LiouvilleCoupling(1.0)
        expected = 0.5 * math.log(2 * math.pi) - math.lgamma(0.625) + 0.125 * math.log(0.5)
        self.assertLess(abs(log_double_gamma(1.75, coupling) - expected), 1e-10)

    def test_against_high_precision_quadrature(self):
        coupling = LiouvilleCoupling(1.5)
        mpmath.mp.dps = 60
        try:
            q = mpmath.mpf(coupling.q_charge)
            b, big_b = mpmath.mpf(coupling.b), mpmath.mpf(coupling.big_b)
            x = mpmath.mpf(1)
            c = x - q / 2

            def bracket(t):
                ratio = mpmath.exp(-q * t / 2) * mpmath.expm1(-c * t) / (
                    mpmath.expm1(-b * t) * mpmath.expm1(-big_b * t))
                return (ratio - c ** 2 / 2 * mpmath.exp(-t) + c / t) / t

            # unit panels, refined towards t = 0 where the bracket cancels
            panels = [0, mpmath.mpf('1e-4'), mpmath.mpf('1e-2'), mpmath.mpf('0.1'), mpmath.mpf('0.5')]
            panels += list(range(1, 81))
            body = mpmath.quad(bracket, panels, method='gauss-legendre')
            tail = c / 80 - c ** 2 / 2 * mpmath.e1(80)
            expected = float(body + tail)
        finally:
            mpmath.mp.dps = 15
        self.assertLess(abs(log_double_gamma(1.0, coupling) - expected), 1e-10)

    def test_pole_report(self):
        coupling = LiouvilleCoupling(1.0)
        report = double_gamma(0.0, coupling)
        self.assertIsInstance(report, PoleReport)
        self.assertEqual(report.lattice_indices, (0, 0))
        self.assertIsInstance(double_gamma(-coupling.b - coupling.big_b, coupling), PoleReport)

    def test_half_shift_at_one_point_three(self):
        coupling = LiouvilleCoupling(1.0)
        ratio = double_gamma(1.3, coupling) / double_gamma(1.8, coupling)
        expected = math.gamma(0.65) * 0.5 ** (-0.65 + 0.5) / math.sqrt(2 * math.pi)
        self.assertLess(relative(ratio, expected), 1e-10)

    def test_shift_equations_in_strip(self):
        for gamma in (0.5, 1.0, 1.5, 1.9):
            coupling = LiouvilleCoupling(gamma)
            q = coupling.q_charge
            for x in (0.35, 0.5 + 0.3j, 0.5 * q, 0.8 * q - 0.2j):
                for chi in (coupling.b, coupling.big_b):
                    ratio = cmath.exp(
                        log_double_gamma_extended(x, coupling)
                        - log_double_gamma_extended(x + chi, coupling)
                    )
                    expected = double_gamma_shift_factor(x, chi, coupling)
                    self.assertLess(relative(ratio, expected), 1e-9, (gamma, x, chi))

    def test_shift_round_trip(self):
        coupling = LiouvilleCoupling(1.2)
        x = 0.8 + 0.2j
        lifted = log_double_gamma_extended(x + 3 * coupling.b, coupling)
        lifted += sum(log_shift_factor(x + j * coupling.b, coupling.b, coupling) for j in range(3))
        self.assertLess(same_log(lifted, log_double_gamma_extended(x, coupling)), 1e-9)

    def test_continuation_left_of_strip(self):
        coupling = LiouvilleCoupling(1.0)
        x = -0.7 + 0.1j
        expected = log_shift_factor(x, coupling.big_b, coupling) + log_double_gamma(x + coupling.big_b, coupling)
        self.assertLess(same_log(log_double_gamma_extended(x, coupling), expected), 1e-9)


class DoubleSineTests(SimpleTestCase):
    def test_value_at_half_q(self):
        coupling = LiouvilleCoupling(1.3)
        self.assertLess(abs(double_sine(coupling.q_charge / 2, coupling) - 1.0), 1e-10)

    def test_reflection(self):
        coupling = LiouvilleCoupling(1.2)
        x = 0.9 + 0.3j
        product = double_sine(x, coupling) * double_sine(coupling.q_charge - x, coupling)
        self.assertLess(abs(product - 1.0), 1e-10)

    def test_shift(self):
        coupling = LiouvilleCoupling(0.8)
        ratio = double_sine(0.7 + coupling.b, coupling) / double_sine(0.7, coupling)
        self.assertLess(relative(ratio, 2 * math.sin(math.pi * 0.8 * 0.7 / 2)), 1e-10)

    def test_poles_and_zeros(self):
        coupling = LiouvilleCoupling(1.0)
        self.assertIsInstance(double_sine(-coupling.b, coupling), PoleReport)
        self.assertEqual(double_sine(coupling.q_charge + coupling.big_b, coupling), 0j)

    def test_array_matches_scalar(self):
        for gamma in (1.0, 1.3):
            coupling = LiouvilleCoupling(gamma)
            points = np.array([0.3 + 0.2j, 1.1 - 0.7j, 2.9 + 1.5j, -0.6 + 0.4j, 4.2 - 2.5j])
            logs = log_double_sine_array(points, coupling)
            for x, value in zip(points, logs):
                self.assertLess(relative(cmath.exp(value), double_sine(complex(x), coupling)), 1e-10, (gamma, x))

    def test_array_pole(self):
        coupling = LiouvilleCoupling(1.0)
        with self.assertRaises(PoleError):
            log_double_sine_array(np.array([0.5, -coupling.big_b]), coupling)

    def test_asymptotic_below_cutover(self):
        # at Im x = 12 the integral branch is still used for γ = 1
        coupling = LiouvilleCoupling(1.0)
        for x in (1.0 + 12.0j, 1.6 - 12.0j):
            exact = log_double_sine_array(np.array([x]), coupling)[0]
            approx = complex(log_double_sine_asymptotic(x, coupling))
            self.assertLess(same_log(exact, approx), 1e-6)

    def test_asymptotic_far_out(self):
        coupling = LiouvilleCoupling(1.0)
        for x in (1.0 + 40.0j, 1.0 - 40.0j):
            value = cmath.exp(log_double_sine_array(np.array([x]), coupling)[0])
            self.assertLess(abs(value / double_sine_asymptotic(x, coupling) - 1.0), 1e-6)

    def test_asymptotic_precondition(self):
        with self.assertRaises(DomainError):
            double_sine_asymptotic(1.0, LiouvilleCoupling(1.0))


class BetaLawTests(SimpleTestCase):
    def test_zeroth_moment(self):
        self.assertEqual(beta22_log_moment(0.0, 1.0, 4.0, 2.0, 0.5, 0.5), 0.0)
        self.assertEqual(beta10_log_moment(0.0, 4.0, 6.0), 0.0)

    def test_beta22_against_levy_khintchine(self):
        p, b0, b1, b2, a2 = 0.3, 2.0, 0.5, 0.5, 4.0

        def integrand(t):
            return (mpmath.expm1(-p * t) * mpmath.exp(-b0 * t)
                    * mpmath.expm1(-b1 * t) * mpmath.expm1(-b2 * t)
                    / (mpmath.expm1(-t) * mpmath.expm1(-a2 * t)) / t)

        expected = float(mpmath.quad(integrand, [0, 1, 10, mpmath.inf]))
        self.assertLess(abs(beta22_log_moment(p, 1.0, a2, b0, b1, b2) - expected), 1e-9)

    def test_beta22_convex_in_p(self):
        grid = [-0.5, 0.0, 0.5, 1.0, 1.5]
        values = [beta22_log_moment(p, 1.0, 4.0, 2.0, 0.5, 0.5) for p in grid]
        for left, middle, right in zip(values, values[1:], values[2:]):
            self.assertGreater(left + right - 2 * middle, -1e-9)

    def test_beta22_needs_a1_one(self):
        with self.assertRaises(DomainError):
            beta22_log_moment(0.5, 2.0, 4.0, 2.0, 0.5, 0.5)

    def test_beta10(self):
        self.assertAlmostEqual(beta10_log_moment(4.0, 4.0, 6.0), math.log(6.0), places=12)
        expected = float(1.5 / 4 * mpmath.log(4) + mpmath.loggamma(7.5 / 4) - mpmath.loggamma(6 / 4))
        self.assertLess(abs(beta10_log_moment(1.5, 4.0, 6.0) - expected), 1e-12)
        with self.assertRaises(DomainError):
            beta10_log_moment(-7.0, 4.0, 6.0)
