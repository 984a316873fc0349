import io
import json
import math
import os
import tempfile
import threading
from unittest import mock

import pandas as pd
from django.conf import settings
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase
from pydantic import ValidationError

from boundary_liouville.dispatch import fan_out
from boundary_liouville.exceptions import DomainError, GridError
from cli.config import load_run_config
from special_functions.coupling import LiouvilleCoupling
from structure_constants.bulk import bar_U
from structure_constants.contour import contour_options, contour_override
from structure_constants.correlators import position_factor, unbarred
from structure_constants.interval import interval_moment_M

ONE = LiouvilleCoupling(1.0)


def run(*args):
    out, err = io.StringIO(), io.StringIO()
    call_command(*args, stdout=out, stderr=err)
    return out.getvalue()


def run_failing(test, *args):
    out, err = io.StringIO(), io.StringIO()
    with test.assertRaises(CommandError) as caught:
        call_command(*args, stdout=out, stderr=err)
    return caught.exception, out.getvalue()


class EvalCommandTests(SimpleTestCase):
    def test_bulk_one_point(self):
        record = json.loads(run('eval', 'U', '--gamma', '1', '--alpha', '2'))
        self.assertEqual(record['kind'], 'U')
        self.assertAlmostEqual(record['value_re'], math.pi, places=9)
        self.assertEqual(record['params'], {'alpha': 2.0})

    def test_two_point_at_q(self):
        record = json.loads(run('eval', 'R', '--gamma', '1', '--beta', '2.5', '--sigma1', '1.25', '--sigma2', '1.25'))
        self.assertLess(abs(complex(record['value_re'], record['value_im']) - 1.0), 1e-9)

    def test_interval_paths_agree(self):
        record = json.loads(run('eval', 'H_interval', '--gamma', '1', '--p', '0.5', '--a', '0', '--b', '0'))
        exact = interval_moment_M(0.5, 0.0, 0.0, ONE)
        self.assertLess(abs(record['value_re'] - exact), 1e-7 * exact)
        self.assertLess(record['abs_error_estimate'], 1e-7 * exact)

    def test_correlator(self):
        record = json.loads(run('eval', 'correlator', '--kind', 'U', '--gamma', '1', '--alpha', '2.7',
                                '--z', '1j', '--mu-b', '2'))
        constant = unbarred('U', bar_U(2.7, ONE), ONE, alpha=2.7, mu_b=2.0)
        expected = constant / position_factor('U', [1j], ONE, alpha=2.7)
        value = complex(record['value_re'], record['value_im'])
        self.assertLess(abs(value - expected), 1e-12 * abs(expected))
        self.assertEqual(record['kind'], 'correlator_U')

    def test_missing_parameter(self):
        error, _ = run_failing(self, 'eval', 'G', '--gamma', '1', '--alpha', '2')
        self.assertEqual(error.returncode, 2)
        self.assertIn('DomainError', str(error))

    def test_bad_gamma(self):
        error, _ = run_failing(self, 'eval', 'U', '--gamma', '2.5', '--alpha', '2')
        self.assertEqual(error.returncode, 2)
        self.assertIn('ValidationError', str(error))

    def test_csv_and_output_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'u.csv')
            run('eval', 'U', '--gamma', '1', '--alpha', '2', '--format', 'csv', '--output', path)
            frame = pd.read_csv(path)
        self.assertEqual(list(frame.columns), ['kind', 'gamma', 'params', 'value_re', 'value_im', 'abs_error_estimate'])
        self.assertAlmostEqual(frame['value_re'][0], math.pi, places=9)


class VerifyCommandTests(SimpleTestCase):
    def test_single_suite(self):
        lines = run('verify', '--suite', 'reflect_R', '--points', '4', '--gammas', '1.0').splitlines()
        self.assertEqual(len(lines), 1)
        report = json.loads(lines[0])
        self.assertEqual(report['identity'], 'reflect_R')
        self.assertEqual(report['n_points'], 4)
        self.assertTrue(report['pass'])
        self.assertLess(report['max_residual'], 1e-8)

    def test_failing_suite_exits_one(self):
        with tempfile.NamedTemporaryFile('w', suffix='.toml', delete=False) as f:
            f.write("[tolerances]\nreflect_R = 1e-300\n")
        try:
            error, out = run_failing(self, 'verify', '--suite', 'reflect_R', '--points', '3', '--gammas', '1.0',
                                     '--config', f.name)
        finally:
            os.unlink(f.name)
        self.assertEqual(error.returncode, 1)
        self.assertFalse(json.loads(out)['pass'])

    def test_grid_error_exits_two(self):
        with mock.patch('cli.management.commands.verify.verify_identity', side_effect=GridError('too few points')):
            error, _ = run_failing(self, 'verify', '--suite', 'reflect_R')
        self.assertEqual(error.returncode, 2)
        self.assertIn('GridError', str(error))


class MCCommandTests(SimpleTestCase):
    ARGS = ('mc', 'fyodorov_bouchaud', '--gamma', '0.5', '--n-samples', '1000', '--n-modes', '32', '--threads', '2')

    def mc_output(self, *args):
        try:
            return run(*args)
        except CommandError as error:
            # a statistical FAIL still writes its rows
            self.assertEqual(error.returncode, 1)
            return None

    def test_stages_and_columns(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'fb.csv')
            self.mc_output(*self.ARGS, '--output', path)
            frame = pd.read_csv(path)
        self.assertEqual(list(frame['stage']), ['coarse', 'fine', 'extrapolated'])
        self.assertEqual(list(frame['n_modes']), [16, 32, 32])
        for column in ('check', 'gamma', 'p', 'exact', 'mc_mean', 'mc_stderr', 'z_score', 'n_samples', 'seed', 'pass'):
            self.assertIn(column, frame.columns)
        exact = math.gamma(1.0 - 0.5 * 0.25 / 4.0) / math.gamma(1.0 - 0.25 / 4.0) ** 0.5
        self.assertAlmostEqual(frame['exact'][0], exact, places=12)

    def test_byte_identical_reruns(self):
        with tempfile.TemporaryDirectory() as directory:
            first, second = os.path.join(directory, 'a.csv'), os.path.join(directory, 'b.csv')
            self.mc_output(*self.ARGS, '--output', first)
            self.mc_output(*self.ARGS, '--output', second)
            with open(first, 'rb') as a, open(second, 'rb') as b:
                self.assertEqual(a.read(), b.read())

    def test_domain_error_exits_two(self):
        error, _ = run_failing(self, 'mc', 'circle_insertion', '--gamma', '1', '--beta', '2.1', '--n-samples', '10')
        self.assertEqual(error.returncode, 2)

    def test_tail_needs_exceedances(self):
        error, _ = run_failing(self, 'mc', 'tail', '--gamma', '1', '--n-samples', '20', '--n-grid', '32')
        self.assertEqual(error.returncode, 2)
        self.assertIn('ConvergenceError', str(error))

    def test_budget_ceiling(self):
        error, _ = run_failing(self, 'mc', 'interval', '--n-samples', str(10 ** 9))
        self.assertEqual(error.returncode, 2)


class SweepCommandTests(SimpleTestCase):
    def test_admissible_range(self):
        frame = pd.read_csv(io.StringIO(run('sweep', 'R', '--gamma', '1', '--axis', 'beta',
                                            '--start', '0.55', '--stop', '2.45', '--steps', '100')))
        self.assertEqual(len(frame), 100)
        self.assertFalse(frame['skipped'].any())
        self.assertFalse(frame[['value_re', 'value_im']].isna().any().any())

    def test_pole_is_flagged(self):
        frame = pd.read_csv(io.StringIO(run('sweep', 'R', '--gamma', '1', '--axis', 'beta',
                                            '--start', '0.1', '--stop', '0.9', '--steps', '9')))
        self.assertEqual(list(frame['skipped']), [False] * 4 + [True] + [False] * 4)
        self.assertTrue(frame['value_re'][3:6:2].notna().all())

    def test_real_bulk_values(self):
        frame = pd.read_csv(io.StringIO(run('sweep', 'U', '--gamma', '1', '--axis', 'alpha',
                                            '--start', '0.55', '--stop', '5.0', '--steps', '20')))
        self.assertFalse(frame['skipped'].any())
        self.assertTrue(((frame['value_im'].abs()) <= 1e-12 * frame['value_re'].abs()).all())

    def test_missing_fixed_parameter(self):
        error, _ = run_failing(self, 'sweep', 'G', '--axis', 'alpha', '--start', '1', '--stop', '2')
        self.assertEqual(error.returncode, 2)


class RunConfigTests(SimpleTestCase):
    def write_config(self, text):
        f = tempfile.NamedTemporaryFile('w', suffix='.toml', delete=False)
        f.write(text)
        f.close()
        self.addCleanup(os.unlink, f.name)
        return f.name

    def test_precedence(self):
        path = self.write_config("[mc]\nn_samples = 500\n[tolerances]\nreflect_R = 1e-6\n")
        config = load_run_config('mc', {'config': path})
        self.assertEqual(config.mc_budget.n_samples, 500)
        self.assertEqual(config.tolerances['reflect_R'], 1e-6)
        self.assertEqual(config.mc_budget.n_modes, settings.BCFT_MC['n_modes'])
        config = load_run_config('mc', {'config': path, 'n_samples': 700, 'seed': 3})
        self.assertEqual(config.mc_budget.n_samples, 700)
        self.assertEqual(config.mc_budget.seed, 3)

    def test_invalid_values(self):
        with self.assertRaises(ValidationError):
            load_run_config('eval', {'gamma': 0.0})
        with self.assertRaises(ValidationError):
            load_run_config('mc', {'config': self.write_config("[tolerances]\nshift_G_gamma = -1.0\n")})
        with self.assertRaises(ValidationError):
            load_run_config('mc', {'config': self.write_config("[mc]\nsamples = 10\n")})
        with self.assertRaises(DomainError):
            load_run_config('mc', {'config': self.write_config("[plots]\nwidth = 3\n")})

    def test_contour_override_is_scoped(self):
        saved = dict(settings.BCFT_CONTOUR)
        with contour_override({'min_gap': 0.2}):
            self.assertEqual(contour_options()['min_gap'], 0.2)
            self.assertEqual(contour_options()['panel_length'], saved['panel_length'])
            self.assertEqual(settings.BCFT_CONTOUR, saved)
        self.assertEqual(contour_options(), saved)

    def test_contour_override_stays_in_its_thread(self):
        entered, release = threading.Event(), threading.Event()

        def hold_override():
            with contour_override({'min_gap': 0.2}):
                entered.set()
                release.wait(5)

        thread = threading.Thread(target=hold_override)
        thread.start()
        try:
            self.assertTrue(entered.wait(5))
            self.assertEqual(contour_options()['min_gap'], settings.BCFT_CONTOUR['min_gap'])
        finally:
            release.set()
            thread.join()

    def test_fan_out_carries_the_override(self):
        def read_gap(index):
            return index, contour_options()['min_gap']
        read_gap.name = 'read_gap'

        with self.settings(CELERY_TASK_ALWAYS_EAGER=True, BCFT_THREADS=4):
            with contour_override({'min_gap': 0.3}):
                results = fan_out(read_gap, [(k,) for k in range(6)], 4)
        self.assertEqual(results, [(k, 0.3) for k in range(6)])

    def test_verify_sends_contour_to_points(self):
        path = self.write_config("[contour]\nmin_gap = 10.0\n")
        error, _ = run_failing(self, 'verify', '--suite', 'reflect_H', '--points', '2', '--gammas', '1.3',
                               '--config', path)
        self.assertEqual(error.returncode, 2)
        self.assertIn('GridError', str(error))
