import math
from unittest import mock

import numpy as np
from django.test import SimpleTestCase

from boundary_liouville.exceptions import ConvergenceError, DomainError, FactorizationError
from gmc_sim.estimates import MCEstimate, compare, fit_tail_slope, richardson
from gmc_sim.fields import (
    CircleFieldConfig,
    IntervalFieldConfig,
    covariance_factor,
    interval_covariance,
    sample_circle_field,
)
from gmc_sim.kernels import circle_masses, circle_weights, interval_masses, tail_masses
from gmc_sim.moments import circle_moment_mc, interval_moment_mc, tail_probability_mc
from gmc_sim.rng import stream
from gmc_sim.streams import run_streams, split_counts
from special_functions.coupling import LiouvilleCoupling
from structure_constants.interval import fyodorov_bouchaud_log_moment, interval_moment_M

SMALL_CIRCLE = CircleFieldConfig(64, 256, 1.0)


class CircleFieldTests(SimpleTestCase):
    def test_variance_is_harmonic_sum(self):
        self.assertAlmostEqual(CircleFieldConfig(4, 8, 1.0).variance, 2.0 * (1 + 1 / 2 + 1 / 3 + 1 / 4))

    def test_empirical_moments(self):
        config = CircleFieldConfig(32, 128, 1.0)
        n = 4000
        field = sample_circle_field(config, stream(1, 0), n)
        variance = config.variance
        self.assertLess(abs(field[:, 0].mean()), 5.0 * math.sqrt(variance / n))
        self.assertLess(abs(field[:, 0].var() - variance), 5.0 * variance * math.sqrt(2.0 / n))

        opposite = 2.0 * sum((-1) ** k / k for k in range(1, 33))
        covariance = np.mean(field[:, 0] * field[:, 64])
        self.assertLess(abs(covariance - opposite), 5.0 * math.sqrt((variance ** 2 + opposite ** 2) / n))

    def test_matches_direct_sum(self):
        for n_modes, n_grid in ((12, 32), (40, 16)):
            config = CircleFieldConfig(n_modes, n_grid, 1.0)
            field = sample_circle_field(config, stream(3, 0), 5)
            rng = stream(3, 0)
            a = rng.standard_normal((5, n_modes))
            b = rng.standard_normal((5, n_modes))
            modes = np.arange(1, n_modes + 1)
            phase = np.outer(modes, config.angles)
            direct = (a * np.sqrt(2.0 / modes)) @ np.cos(phase) + (b * np.sqrt(2.0 / modes)) @ np.sin(phase)
            self.assertLess(np.max(np.abs(field - direct)), 1e-10)

    def test_config_checks(self):
        with self.assertRaises(DomainError):
            CircleFieldConfig(0, 64, 1.0)
        with self.assertRaises(DomainError):
            CircleFieldConfig(8, 4, 1.0)
        with self.assertRaises(DomainError):
            CircleFieldConfig(8, 64, 2.0)


class IntervalFieldTests(SimpleTestCase):
    def test_factor_reproduces_covariance(self):
        config = IntervalFieldConfig.on_grid(48, 1.0)
        factor = covariance_factor(48, config.mollification)
        covariance = interval_covariance(48, config.mollification)
        self.assertLess(np.max(np.abs(factor @ factor.T - covariance)), 1e-10)
        self.assertAlmostEqual(covariance[0, 0], 2.0 * math.log(48) + 3.0)
        self.assertAlmostEqual(covariance[0, 1], 2.0 * math.log(48))
        self.assertTrue(np.allclose(covariance, covariance.T))

    def test_factorization_failure(self):
        with mock.patch('gmc_sim.fields.np.linalg.cholesky', side_effect=np.linalg.LinAlgError):
            with self.assertRaises(FactorizationError):
                IntervalFieldConfig.on_grid(37, 1.0)

    def test_window(self):
        with self.assertRaises(DomainError):
            IntervalFieldConfig.on_grid(16, 1.0, length=1.5)


class StreamTests(SimpleTestCase):
    def test_streams_are_reproducible(self):
        self.assertEqual(stream(5, 2).standard_normal(4).tolist(), stream(5, 2).standard_normal(4).tolist())
        self.assertNotEqual(stream(5, 2).standard_normal(4).tolist(), stream(5, 3).standard_normal(4).tolist())

    def test_split(self):
        self.assertEqual(split_counts(10, 3), [4, 3, 3])
        self.assertEqual(split_counts(2, 4), [1, 1, 0, 0])

    def test_fixed_stream_order(self):
        params = {'gamma': 1.0, 'n_modes': 16, 'n_grid': 64, 'beta': 0.0}
        first = run_streams('circle', params, 300, 11, worker_count=3)
        second = run_streams('circle', params, 300, 11, worker_count=3)
        self.assertEqual(len(first), 300)
        self.assertTrue(np.array_equal(first, second))
        # stream k holds the k-th block
        head = circle_masses(params, stream(11, 0), 100)
        self.assertTrue(np.array_equal(first[:100], head))


class KernelTests(SimpleTestCase):
    def test_masses_are_positive(self):
        params = {'gamma': 1.2, 'n_modes': 16, 'n_grid': 64, 'beta': 0.5}
        self.assertTrue(np.all(circle_masses(params, stream(2, 0), 50) > 0))
        self.assertTrue(np.all(interval_masses({'gamma': 1.2, 'n_grid': 32, 'a': 0.2, 'b': -0.1}, stream(2, 0), 50) > 0))
        tail = {'gamma': 1.0, 'n_grid': 32, 'beta': 1.8, 'mu1': 1.0, 'mu2': 0.0}
        self.assertTrue(np.all(tail_masses(tail, stream(2, 0), 50) > 0))

    def test_insertion_cell(self):
        config = CircleFieldConfig(8, 64, 1.0)
        weights = circle_weights(config, 1.0)
        half_cell = math.pi / 64
        self.assertAlmostEqual(weights[0], half_cell ** -0.5 / 0.5)
        self.assertTrue(np.array_equal(circle_weights(config, 0.0), np.ones(64)))


class MomentTests(SimpleTestCase):
    def test_zeroth_moment(self):
        estimate = circle_moment_mc(1.0, 0.0, config=SMALL_CIRCLE, n_samples=100, seed=1)
        self.assertEqual(estimate.mean, 1.0)
        self.assertEqual(interval_moment_mc(1.0, 0.0, n_samples=100, seed=1).mean, 1.0)

    def test_normalization(self):
        estimate = circle_moment_mc(1.0, 1.0, config=SMALL_CIRCLE, n_samples=4000, seed=7, worker_count=2)
        self.assertLess(compare(estimate, 1.0), 4.0)
        config = IntervalFieldConfig.on_grid(64, 1.0)
        estimate = interval_moment_mc(1.0, 1.0, config=config, n_samples=4000, seed=7, worker_count=2)
        self.assertLess(compare(estimate, 1.0), 4.0)

    def test_fyodorov_bouchaud(self):
        config = CircleFieldConfig(64, 256, 0.5)
        estimate = circle_moment_mc(0.5, 0.5, config=config, n_samples=4000, seed=3, worker_count=2)
        exact = math.exp(fyodorov_bouchaud_log_moment(0.5, LiouvilleCoupling(0.5)))
        self.assertLess(abs(estimate.mean / exact - 1.0), 2e-2)

    def test_interval_closed_form(self):
        config = IntervalFieldConfig.on_grid(64, 0.5)
        estimate = interval_moment_mc(0.5, 0.5, config=config, n_samples=4000, seed=3, worker_count=2)
        exact = interval_moment_M(0.5, 0.0, 0.0, LiouvilleCoupling(0.5))
        self.assertLess(abs(estimate.mean / exact - 1.0), 2e-2)

    def test_deterministic(self):
        first = circle_moment_mc(1.0, 0.5, 0.3, SMALL_CIRCLE, 500, 9, worker_count=2)
        second = circle_moment_mc(1.0, 0.5, 0.3, SMALL_CIRCLE, 500, 9, worker_count=2)
        self.assertEqual(first.mean, second.mean)
        self.assertEqual(first.stderr, second.stderr)

    def test_ranges(self):
        with self.assertRaises(DomainError):
            circle_moment_mc(1.0, 5.0, config=SMALL_CIRCLE, n_samples=10)
        with self.assertRaises(DomainError):
            circle_moment_mc(1.0, 0.5, 2.1, config=SMALL_CIRCLE, n_samples=10)
        with self.assertRaises(DomainError):
            circle_moment_mc(1.2, 0.5, config=SMALL_CIRCLE, n_samples=10)
        with self.assertRaises(DomainError):
            interval_moment_mc(1.0, 0.5, -1.2, 0.0, n_samples=10)
        with self.assertRaises(DomainError):
            tail_probability_mc(1.0, 0.4, 1.0, 1.0, [1.0], n_samples=10)
        with self.assertRaises(DomainError):
            tail_probability_mc(1.0, 1.8, 0.0, 0.0, [1.0], n_samples=10)
        with self.assertRaises(DomainError):
            tail_probability_mc(1.0, 1.8, 1.0, 1.0, [2.0, 1.0], n_samples=10)


class TailTests(SimpleTestCase):
    def test_survival_function(self):
        config = IntervalFieldConfig.on_grid(64, 1.0, start=-0.5)
        rows = tail_probability_mc(1.0, 1.8, 1.0, 1.0, [1e-6, 1.0, 10.0, 100.0], config, 2000, 5, worker_count=2)
        self.assertEqual([u for u, _ in rows], [1e-6, 1.0, 10.0, 100.0])
        fractions = [estimate.mean for _, estimate in rows]
        self.assertGreater(fractions[0], 0.9)
        self.assertEqual(fractions, sorted(fractions, reverse=True))

    def test_slope_fit(self):
        u = np.logspace(0, 4, 41)
        rows = [(x, MCEstimate(mean=x ** -1.4, stderr=0.0, n_samples=1000000, seed=0)) for x in u]
        self.assertAlmostEqual(fit_tail_slope(rows), -1.4, places=10)
        with self.assertRaises(ConvergenceError):
            fit_tail_slope([(x, MCEstimate(mean=x ** -1.4, stderr=0.0, n_samples=10, seed=0)) for x in u])


class EstimateTests(SimpleTestCase):
    def test_compare(self):
        estimate = MCEstimate(mean=1.5, stderr=0.1, n_samples=100, seed=0)
        self.assertEqual(compare(estimate, 1.5), 0.0)
        self.assertAlmostEqual(compare(estimate, 1.3), 2.0)
        with self.assertRaises(DomainError):
            compare(MCEstimate(mean=1.0, stderr=0.0, n_samples=100, seed=0), 2.0)

    def test_richardson(self):
        coarse = MCEstimate(mean=1.1, stderr=0.03, n_samples=100, seed=1)
        fine = MCEstimate(mean=1.05, stderr=0.02, n_samples=100, seed=2)
        extrapolated = richardson(coarse, fine, 2.0, 1.0)
        self.assertAlmostEqual(extrapolated.mean, 1.0)
        self.assertAlmostEqual(extrapolated.stderr, 0.05)
        self.assertEqual(extrapolated.n_samples, 200)

    def test_from_values(self):
        estimate = MCEstimate.from_values([1.0, 2.0, 3.0, 4.0], seed=4)
        self.assertEqual(estimate.mean, 2.5)
        self.assertAlmostEqual(estimate.stderr, math.sqrt(5.0 / 3.0) / 2.0)
