import cmath
import math

import numpy as np
from django.test import SimpleTestCase

from boundary_liouville.exceptions import (
    BranchError,
    ContourCollisionError,
    ConvergenceError,
    DomainError,
    GridError,
)
from special_functions.coupling import LiouvilleCoupling
from structure_constants.bulk import (
    bar_G,
    bar_G_dual_shift,
    bar_G_gamma_shift,
    bar_G_reflection_factor,
    bar_U,
)
from structure_constants.contour import BarnesIntegrand, contour_J, plan_contour
from structure_constants.correlators import (
    assemble_correlator,
    disk_halfplane_factor,
    position_exponents_H,
    position_factor,
    unbarred,
)
from structure_constants.identities import DEFAULT_SUITES, EXTRA_SUITES, IDENTITIES, residual
from structure_constants.interval import (
    bar_H_interval,
    circle_insertion_log_moment,
    fyodorov_bouchaud_log_moment,
    interval_betas,
    interval_moment_M,
)
from structure_constants.parametrization import (
    BetaTriple,
    MuTriple,
    SigmaTriple,
    conformal_weight,
    half_space_condition,
    mu_from_sigma,
    sigma_from_mu,
)
from structure_constants.three_point import (
    bar_H,
    bar_H_scaling_factor,
    bar_H_special_value,
    limit_H_to_R,
)
from structure_constants.two_point import (
    bar_R,
    bar_R_dual_shift_rhs,
    bar_R_gamma_shift_rhs,
    bar_R_half_shift_rhs,
    bar_R_reflection_product,
    tail_coefficient,
    tail_exponent,
)
from structure_constants.verification import GridSpec, VerificationReport, sobol_points, verify_identity

ONE = LiouvilleCoupling(1.0)


def relative(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def generic_point():
    # γ = 1, every lattice gap at least 0.35 wide
    half = ONE.q_charge / 2.0
    return BetaTriple(1.8, 1.9, 2.0), SigmaTriple(half + 0.05, half - 0.05, half)


class ParametrizationTests(SimpleTestCase):
    def test_positive_mu(self):
        for gamma in (0.7, 1.0, 1.6):
            coupling = LiouvilleCoupling(gamma)
            self.assertAlmostEqual(sigma_from_mu(1.0, coupling), coupling.q_charge / 2.0, places=14)

    def test_round_trip(self):
        coupling = LiouvilleCoupling(1.2)
        sigma = coupling.q_charge / 2.0 + coupling.gamma / 4.0
        mu = mu_from_sigma(sigma, coupling)
        self.assertLess(abs(mu - cmath.exp(1j * math.pi * 1.2 ** 2 / 4.0)), 1e-14)
        self.assertLess(abs(sigma_from_mu(mu, coupling) - sigma), 1e-13)

    def test_modulus(self):
        mu = mu_from_sigma(ONE.q_charge / 2.0 + 0.7j, ONE)
        self.assertAlmostEqual(abs(mu), math.exp(-math.pi * 0.7), places=14)

    def test_negative_mu_branch(self):
        sigma = sigma_from_mu(-1.0, ONE)
        # arg μ = π, never -π
        self.assertAlmostEqual(sigma.real, ONE.q_charge / 2.0 + 1.0, places=13)

    def test_zero_mu(self):
        with self.assertRaises(BranchError):
            sigma_from_mu(0.0, ONE)

    def test_half_space(self):
        self.assertTrue(half_space_condition((1, 1, 1)))
        self.assertFalse(half_space_condition((1, -1, 0)))
        self.assertTrue(half_space_condition((1, cmath.exp(-1j * math.pi / 4), cmath.exp(-1j * math.pi / 3))))
        self.assertFalse(half_space_condition((-1, -1, -1)))
        self.assertTrue(MuTriple(1, 1j, 0).half_space_ok)

    def test_triples(self):
        betas = BetaTriple(0.5, 1.0, 1.5)
        self.assertEqual(betas.beta_bar, betas.beta1 + betas.beta2 + betas.beta3)
        self.assertEqual(tuple(betas.cyclic()), (1.0, 1.5, 0.5))
        sigmas = SigmaTriple.uniform(1.25).shifted(0.1j)
        self.assertEqual(sigmas.sigma2, 1.25 + 0.1j)
        self.assertEqual(SigmaTriple.from_mus((1, 1, 1), ONE), SigmaTriple.uniform(1.25))

    def test_conformal_weight_reflection(self):
        for beta in (0.3, 1.7, 2.2 + 0.4j):
            self.assertLess(abs(conformal_weight(beta, ONE) - conformal_weight(2 * ONE.q_charge - beta, ONE)), 1e-14)


class BulkTests(SimpleTestCase):
    def test_bar_U_anchors(self):
        self.assertLess(abs(bar_U(ONE.q_charge, ONE) - 1.0), 1e-12)
        self.assertLess(relative(bar_U(2.0, ONE), math.pi), 1e-12)

    def test_bar_G_without_boundary_insertion(self):
        for alpha in np.linspace(1.3, 3.0, 10):
            self.assertLess(relative(bar_G(alpha, 0.0, ONE), bar_U(alpha, ONE)), 1e-9)

    def test_gamma_shift(self):
        alpha, beta = 2.2, 0.3
        ratio = bar_G(alpha, beta + 1.0, ONE) / bar_G(alpha, beta, ONE)
        self.assertLess(relative(ratio, bar_G_gamma_shift(alpha, beta, ONE)), 1e-8)

    def test_dual_shift(self):
        alpha, beta = 2.2, 0.3
        ratio = bar_G(alpha, beta + 4.0, ONE) / bar_G(alpha, beta, ONE)
        self.assertLess(relative(ratio, bar_G_dual_shift(alpha, beta, ONE)), 1e-8)

    def test_reflection(self):
        for gamma, alpha, beta in ((1.0, 2.2, 1.7), (1.3, 2.0, 1.5), (0.9, 2.5, 2.0)):
            with self.subTest(gamma=gamma, alpha=alpha, beta=beta):
                coupling = LiouvilleCoupling(gamma)
                mirrored = bar_G(alpha, 2.0 * coupling.q_charge - beta, coupling)
                rhs = bar_G_reflection_factor(alpha, beta, coupling) * mirrored
                self.assertLess(residual(bar_G(alpha, beta, coupling), rhs), 1e-9)


class TwoPointTests(SimpleTestCase):
    def test_value_at_q(self):
        for gamma in (0.8, 1.0, 1.5):
            coupling = LiouvilleCoupling(gamma)
            half = coupling.q_charge / 2.0
            self.assertLess(abs(bar_R(coupling.q_charge, half, half, coupling) - 1.0), 1e-9)

    def test_reflection_product(self):
        half = ONE.q_charge / 2.0
        product = bar_R(2.1, half, half, ONE) * bar_R(2 * ONE.q_charge - 2.1, half, half, ONE)
        self.assertLess(residual(product, bar_R_reflection_product(2.1, ONE)), 1e-8)

    def test_gamma_shifts(self):
        coupling = LiouvilleCoupling(1.2)
        half = coupling.q_charge / 2.0
        value = bar_R(1.6, half, half, coupling)
        self.assertLess(residual(value, bar_R_gamma_shift_rhs(1.6, half, half, coupling)), 1e-8)
        self.assertLess(residual(value, bar_R_half_shift_rhs(1.6, half, half, coupling)), 1e-8)

    def test_shifts_with_complex_arcs(self):
        coupling = LiouvilleCoupling(0.9)
        half = coupling.q_charge / 2.0
        s1, s2 = half + 0.1 + 0.3j, half - 0.05 - 0.2j
        value = bar_R(1.4, s1, s2, coupling)
        self.assertLess(residual(value, bar_R_gamma_shift_rhs(1.4, s1, s2, coupling)), 1e-8)
        self.assertLess(residual(value, bar_R_dual_shift_rhs(1.4, s1, s2, coupling)), 1e-8)

    def test_real_for_positive_mu(self):
        half = ONE.q_charge / 2.0
        value = bar_R(1.8, half + 0.2j, half - 0.4j, ONE)
        self.assertLess(abs(value.imag), 1e-10 * abs(value))

    def test_tail(self):
        self.assertAlmostEqual(tail_exponent(1.8, ONE), -1.4)
        self.assertLess(relative(tail_coefficient(1.8, 1.0, 2.0, ONE), tail_coefficient(1.8, 2.0, 1.0, ONE)), 1e-10)
        half = ONE.q_charge / 2.0
        self.assertLess(relative(tail_coefficient(1.8, 1.0, 1.0, ONE), bar_R(1.8, half, half, ONE)), 1e-12)


class ContourTests(SimpleTestCase):
    def test_plan_sits_in_the_gap(self):
        betas, sigmas = generic_point()
        spec = plan_contour(betas, sigmas, ONE)
        self.assertLess(max(x.real for x in spec.left_starts), spec.abscissa)
        self.assertLess(spec.abscissa, min(x.real for x in spec.right_starts))
        self.assertAlmostEqual(spec.gap, 0.35)
        self.assertEqual(spec.crossed, ())

    def test_abscissa_shift(self):
        betas, sigmas = generic_point()
        spec = plan_contour(betas, sigmas, ONE)
        moved = plan_contour(betas, sigmas, ONE, abscissa=spec.abscissa + spec.gap / 4.0)
        self.assertLess(relative(contour_J(betas, sigmas, ONE, spec=spec), contour_J(betas, sigmas, ONE, spec=moved)), 1e-7)

    def test_tail_below_tolerance(self):
        betas, sigmas = generic_point()
        spec = plan_contour(betas, sigmas, ONE)
        integrand = BarnesIntegrand(betas, sigmas, ONE)
        peak = np.max(integrand.log_values(spec.abscissa + 1j * np.linspace(-2, 2, 41)).real)
        edges = integrand.log_values(np.array([spec.abscissa + 1j * spec.height, spec.abscissa - 1j * spec.height]))
        self.assertTrue(np.all(edges.real < peak + math.log(1e-9)))

    def test_divergent_integral(self):
        half = ONE.q_charge / 2.0
        # Re(Q - σ3 + σ2 - β2/2) = 2.5 - 3 - 0.2 < 0
        sigmas = SigmaTriple(half, half - 3.0, half)
        with self.assertRaises(ConvergenceError):
            plan_contour(BetaTriple(1.9, 0.4, 1.9), sigmas, ONE)

    def test_collision(self):
        half = ONE.q_charge / 2.0
        # β̄ = 2Q pinches the second left and the third right lattice together
        with self.assertRaises(ContourCollisionError):
            plan_contour(BetaTriple(1.7, 1.65, 1.65), SigmaTriple.uniform(half), ONE)

    def test_abscissa_outside_gap(self):
        betas, sigmas = generic_point()
        with self.assertRaises(ContourCollisionError):
            plan_contour(betas, sigmas, ONE, abscissa=0.5)

    def test_residues_are_opt_in(self):
        half = ONE.q_charge / 2.0
        betas = BetaTriple(1.65, 1.65, 1.65)
        with self.assertRaises(ContourCollisionError):
            plan_contour(betas, SigmaTriple.uniform(half), ONE)
        spec = plan_contour(betas, SigmaTriple.uniform(half), ONE, allow_residues=True)
        self.assertEqual(spec.crossed, (2,))

    def test_dual_shift_points_clear_the_lattices(self):
        draw = IDENTITIES['shift_H_1_dual'].draw
        for gamma in (0.9, 1.3, 1.8):
            coupling = LiouvilleCoupling(gamma)
            chi, half = coupling.big_b, coupling.q_charge / 2.0
            for u in sobol_points(5, 8, 3, 0):
                params = draw([float(x) for x in u], coupling)
                b1, b2, b3 = params['beta1'], params['beta2'], params['beta3']
                sigmas = SigmaTriple(*(half + params[f'sigma{k}'] for k in (1, 2, 3)))
                moved = sigmas.replace(sigma2=sigmas.sigma2 + chi / 2.0)
                evaluations = (
                    (BetaTriple(b1, b2, b3), sigmas),
                    (BetaTriple(b1 - chi, b2 + chi, b3), moved),
                    (BetaTriple(b1 + chi, b2 + chi, b3), moved),
                    (BetaTriple(b1 + 2.0 * chi, b2, b3), sigmas),
                )
                for betas, arcs in evaluations:
                    spec = plan_contour(betas, arcs, coupling)
                    self.assertGreater(spec.gap, 0.09)
                    self.assertEqual(spec.crossed, ())


class ThreePointTests(SimpleTestCase):
    def test_special_value(self):
        half = SigmaTriple.uniform(ONE.q_charge / 2.0)
        value = bar_H_special_value(1.3, 1.3, half, ONE)
        self.assertLess(abs(value - 1.0), 1e-6)

    def test_special_value_offset_independent(self):
        half = SigmaTriple.uniform(ONE.q_charge / 2.0)
        wide = bar_H_special_value(1.3, 1.3, half, ONE, offset=4e-3)
        narrow = bar_H_special_value(1.3, 1.3, half, ONE, offset=1e-3)
        self.assertLess(abs(wide - 1.0), 1e-5)
        self.assertLess(abs(narrow - wide), 1e-5)

    def test_scaling(self):
        betas, sigmas = generic_point()
        amount = 0.2j
        lhs = bar_H(betas, sigmas.shifted(amount), ONE)
        rhs = bar_H_scaling_factor(betas, amount, ONE) * bar_H(betas, sigmas, ONE)
        self.assertLess(residual(lhs, rhs), 1e-6)

    def test_reflection(self):
        betas, sigmas = generic_point()
        self.assertLess(residual(bar_H(betas, sigmas, ONE), bar_H(betas, sigmas, ONE, variant='reflected')), 1e-5)

    def test_cyclic(self):
        betas, sigmas = generic_point()
        self.assertLess(residual(bar_H(betas, sigmas, ONE), bar_H(betas, sigmas, ONE, variant='cyclic')), 1e-5)

    def test_real_for_positive_mu(self):
        half = SigmaTriple.uniform(ONE.q_charge / 2.0)
        value = bar_H(BetaTriple(1.9, 1.9, 1.9), half, ONE)
        self.assertLess(abs(value.imag), 1e-6 * abs(value))

    def test_unknown_variant(self):
        betas, sigmas = generic_point()
        with self.assertRaises(DomainError):
            bar_H(betas, sigmas, ONE, variant='mirror')

    def test_limit_to_two_point(self):
        half = SigmaTriple.uniform(ONE.q_charge / 2.0)
        extrapolated, values, target = limit_H_to_R(2.2, 1.1, half, ONE)
        self.assertEqual(len(values), 3)
        self.assertLess(abs(extrapolated / target - 1.0), 1e-3)


class IntervalTests(SimpleTestCase):
    def test_trivial_moments(self):
        self.assertEqual(interval_moment_M(0.0, 0.3, 0.1, ONE), 1.0)
        for gamma in (0.6, 1.0, 1.4):
            self.assertAlmostEqual(interval_moment_M(1.0, 0.0, 0.0, LiouvilleCoupling(gamma)), 1.0, places=9)

    def test_reduction(self):
        for p, a, b in ((0.5, 0.0, 0.0), (0.5, 0.2, -0.1), (-0.7, 0.4, 0.3), (1.3, -0.3, 0.1)):
            exact = interval_moment_M(p, a, b, ONE)
            self.assertLess(relative(bar_H_interval(interval_betas(p, a, b, ONE), ONE), exact), 1e-8)

    def test_divergent_moment(self):
        with self.assertRaises(DomainError):
            interval_moment_M(4.5, 0.0, 0.0, ONE)
        with self.assertRaises(DomainError):
            interval_moment_M(2.0, -0.9, 0.0, ONE)

    def test_circle_without_insertion(self):
        for gamma in (0.5, 1.0, 1.5):
            coupling = LiouvilleCoupling(gamma)
            for p in (-0.5, 0.5, 1.0):
                self.assertAlmostEqual(
                    circle_insertion_log_moment(p, 0.0, coupling),
                    fyodorov_bouchaud_log_moment(p, coupling),
                    places=9,
                )

    def test_fyodorov_bouchaud(self):
        self.assertAlmostEqual(
            fyodorov_bouchaud_log_moment(0.5, ONE),
            math.lgamma(0.875) - 0.5 * math.lgamma(0.75),
            places=14,
        )
        self.assertEqual(fyodorov_bouchaud_log_moment(1.0, ONE), 0.0)


class CorrelatorTests(SimpleTestCase):
    def test_unbarred_prefactors(self):
        # 2(α - Q)/γ = 1
        alpha = ONE.q_charge + 0.5
        self.assertLess(relative(unbarred('U', 3.0, ONE, alpha=alpha, mu_b=2.0), 2.0 * 3.0 / 2.0), 1e-14)
        betas = BetaTriple(2.0, 2.0, 2.0 * ONE.q_charge - 4.0 + 1.0)
        self.assertLess(relative(unbarred('H', 0.7, ONE, betas=betas), 2.0 * 0.7), 1e-14)
        self.assertLess(abs(unbarred('R', 1.0, ONE, beta=ONE.q_charge) + 1.0), 1e-15)

    def test_two_point_limit_at_q(self):
        eps = 1e-6
        half = ONE.q_charge / 2.0
        beta = ONE.q_charge - eps
        value = unbarred('R', bar_R(beta, half, half, ONE), ONE, beta=beta)
        self.assertLess(abs(value + 1.0), 1e-4)

    def test_mu_b_required(self):
        with self.assertRaises(DomainError):
            unbarred('U', 1.0, ONE, alpha=2.7)
        with self.assertRaises(DomainError):
            unbarred('G', 1.0, ONE, alpha=2.0, beta=0.5, mu_b=-1.0)

    def test_one_point_position(self):
        factor = position_factor('U', [1j], ONE, alpha=2.0)
        self.assertLess(relative(factor, 2.0 ** (2.0 * conformal_weight(2.0, ONE))), 1e-14)

    def test_two_point_translation(self):
        first = assemble_correlator('R', [0.3, 1.7], 1.0, ONE, beta=1.4)
        second = assemble_correlator('R', [1.3, 2.7], 1.0, ONE, beta=1.4)
        self.assertLess(relative(first, second), 1e-14)

    def test_three_point_exponents(self):
        betas = BetaTriple(0.9, 1.4, 2.1)
        total = sum(conformal_weight(x, ONE) for x in betas)
        self.assertLess(abs(sum(position_exponents_H(betas, ONE)) - total), 1e-14)

    def test_positions_checked(self):
        with self.assertRaises(DomainError):
            position_factor('R', [0.5, 0.5], ONE, beta=1.0)
        with self.assertRaises(DomainError):
            position_factor('U', [-1j], ONE, alpha=1.0)
        with self.assertRaises(DomainError):
            position_factor('G', [1j, 0.5j], ONE, alpha=1.0, beta=0.5)

    def test_disk_factor(self):
        self.assertEqual(disk_halfplane_factor(ONE.q_charge, 0.0, ONE), 1.0)
        self.assertLess(relative(disk_halfplane_factor(2.0, 0.5, ONE), 2.0 ** (1.75 * 0.25)), 1e-14)
        self.assertLess(relative(disk_halfplane_factor(1.2, 0.0, ONE), 2.0 ** (1.2 * 1.3)), 1e-14)


class VerificationTests(SimpleTestCase):
    def test_sobol_points_are_reproducible(self):
        first = sobol_points(3, 20, 11, 0)
        self.assertEqual(first.shape, (32, 3))
        self.assertTrue(np.array_equal(first, sobol_points(3, 20, 11, 0)))
        self.assertFalse(np.array_equal(first, sobol_points(3, 20, 11, 1)))

    def test_reflect_R_suite(self):
        report = verify_identity('reflect_R', GridSpec(gammas=[0.9, 1.3], n_points=6))
        self.assertTrue(report.passed)
        self.assertEqual(report.n_points, 12)

    def test_shift_G_suite(self):
        report = verify_identity('shift_G_gamma', GridSpec(gammas=[1.0], n_points=5))
        self.assertLess(report.max_residual, 1e-7)

    def test_reflect_G_suite(self):
        report = verify_identity('reflect_G', GridSpec(gammas=[0.9, 1.3], n_points=5))
        self.assertTrue(report.passed)
        self.assertEqual(report.n_points, 10)

    def test_three_point_suites(self):
        for name in ('shift_H_1', 'shift_H_2', 'reflect_H', 'scale_H', 'special_values'):
            with self.subTest(name=name):
                report = verify_identity(name, GridSpec(gammas=[1.3], n_points=3))
                self.assertTrue(report.passed, report.json_line())

    def test_dual_three_point_shifts(self):
        for name in ('shift_H_1_dual', 'shift_H_2_dual'):
            with self.subTest(name=name):
                report = verify_identity(name, GridSpec(gammas=[0.9, 1.3], n_points=2))
                self.assertTrue(report.passed, report.json_line())
                self.assertEqual(report.n_points, 4)

    def test_default_suites(self):
        self.assertEqual(len(DEFAULT_SUITES), 11)
        self.assertFalse(set(DEFAULT_SUITES) & set(EXTRA_SUITES))

    def test_interval_reduction_suite(self):
        report = verify_identity('interval_reduction', GridSpec(gammas=[1.0], n_points=5))
        self.assertTrue(report.passed)

    def test_every_point_rejected(self):
        with self.assertRaises(GridError):
            verify_identity('reflect_R', GridSpec(gammas=[1.0], n_points=3, pole_distance=10.0))

    def test_grid_contour_reaches_every_point(self):
        # no lattice gap is 10 wide, so every candidate collides
        with self.assertRaises(GridError):
            verify_identity('reflect_H', GridSpec(gammas=[1.3], n_points=2, contour={'min_gap': 10.0}))

    def test_unknown_identity(self):
        with self.assertRaises(DomainError):
            verify_identity('shift_Q', GridSpec(gammas=[1.0], n_points=1))

    def test_report_json(self):
        report = VerificationReport(identity='reflect_R', n_points=3, max_residual=1e-12, tol=1e-8, passed=True)
        line = report.json_line()
        self.assertIn('"pass":true', line)
        self.assertIn('"identity":"reflect_R"', line)
