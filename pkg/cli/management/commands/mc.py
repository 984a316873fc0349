import math

from django.conf import settings

from cli.base import RunCommand
from cli.records import MCCheckRow
from gmc_sim.estimates import compare, fit_tail_slope, richardson
from gmc_sim.fields import CircleFieldConfig, IntervalFieldConfig
from gmc_sim.moments import circle_moment_mc, interval_moment_mc, tail_probability_mc
from special_functions.coupling import LiouvilleCoupling
from structure_constants.interval import (
    circle_insertion_log_moment,
    fyodorov_bouchaud_log_moment,
    interval_moment_M,
)
from structure_constants.two_point import tail_exponent

CHECKS = ('fyodorov_bouchaud', 'circle_insertion', 'interval', 'tail')


# compare monte carlo chaos moments with the exact laws
class Command(RunCommand):
    help = "Monte Carlo cross-check of an exact GMC law, CSV rows and PASS/FAIL"
    name = 'mc'
    default_format = 'csv'

    def add_arguments(self, parser):
        parser.add_argument('check', choices=CHECKS)
        parser.add_argument('--p', type=float, default=0.5, help='moment order')
        parser.add_argument('--beta', type=float, help='insertion weight')
        parser.add_argument('--a', type=float, default=0.0)
        parser.add_argument('--b', type=float, default=0.0)
        parser.add_argument('--mu1', type=float, default=1.0)
        parser.add_argument('--mu2', type=float, default=1.0)
        parser.add_argument('--n-samples', dest='n_samples', type=int)
        parser.add_argument('--n-modes', dest='n_modes', type=int)
        parser.add_argument('--n-grid', dest='n_grid', type=int)
        super().add_arguments(parser)

    def run(self, config, options):
        check = options['check']
        coupling = LiouvilleCoupling(config.gamma)
        if check == 'tail':
            rows = [self.tail_row(config, coupling, options)]
        else:
            rows = self.refined_rows(check, config, coupling, options)

        verdict = rows[-1]
        self.status(verdict.passed, f"{check}: {'PASS' if verdict.passed else 'FAIL'} "
                                    f"(exact {verdict.exact:.6g}, mc {verdict.mc_mean:.6g} +- {verdict.mc_stderr:.2g})")
        self.emit(config, rows)
        return 0 if verdict.passed else 1

    def refined_rows(self, check, config, coupling, options):
        """Coarse and fine estimates at resolutions n/r and n, then their extrapolation."""
        gamma, p = config.gamma, options['p']
        budget = config.mc_budget
        mc = settings.BCFT_MC
        ratio, order = mc['refinement_ratio'], mc['richardson_order']
        fields = {'p': p}

        if check == 'interval':
            a, b = options['a'], options['b']
            fields.update(a=a, b=b)
            exact = interval_moment_M(p, a, b, coupling)
            resolution = budget.n_grid

            def estimate(n, seed):
                field = IntervalFieldConfig.on_grid(n, gamma)
                return interval_moment_mc(gamma, p, a, b, field, budget.n_samples, seed, config.threads)
        else:
            beta = 0.0 if check == 'fyodorov_bouchaud' else (0.5 if options['beta'] is None else options['beta'])
            if check == 'fyodorov_bouchaud':
                exact = math.exp(fyodorov_bouchaud_log_moment(p, coupling))
            else:
                fields['beta'] = beta
                exact = math.exp(circle_insertion_log_moment(p, beta, coupling))
            resolution = budget.n_modes

            def estimate(n, seed):
                field = CircleFieldConfig.for_modes(n, gamma)
                return circle_moment_mc(gamma, p, beta, field, budget.n_samples, seed, config.threads)

        # coarse and fine stages draw on different seeds
        coarse = estimate(max(2, resolution // ratio), budget.seed + 1)
        fine = estimate(resolution, budget.seed)
        stages = (
            ('coarse', coarse, max(2, resolution // ratio)),
            ('fine', fine, resolution),
            ('extrapolated', richardson(coarse, fine, ratio, order), resolution),
        )
        rows = []
        for stage, value, n in stages:
            z_score = compare(value, exact)
            rows.append(MCCheckRow(
                check=check, stage=stage, gamma=gamma, exact=exact,
                mc_mean=value.mean, mc_stderr=value.stderr, z_score=z_score,
                n_samples=value.n_samples, n_modes=n, seed=value.seed,
                passed=z_score < config.tolerances['mc_z'] if stage == 'extrapolated' else None,
                **fields,
            ))
        return rows

    def tail_row(self, config, coupling, options):
        budget = config.mc_budget
        beta = 1.8 if options['beta'] is None else options['beta']
        field = IntervalFieldConfig.on_grid(budget.n_grid, config.gamma, start=-0.5)
        survival = tail_probability_mc(config.gamma, beta, options['mu1'], options['mu2'], None, field,
                                       budget.n_samples, budget.seed, config.threads)
        slope, stderr, _ = fit_tail_slope(survival, full=True)
        exact = tail_exponent(beta, coupling)
        return MCCheckRow(
            check='tail', stage='fit', gamma=config.gamma, beta=beta, exact=exact,
            mc_mean=slope, mc_stderr=stderr, z_score=abs(slope - exact) / stderr if stderr > 0 else None,
            n_samples=budget.n_samples, n_modes=budget.n_grid, seed=budget.seed,
            passed=abs(slope / exact - 1.0) < settings.BCFT_MC['tail_slope_tolerance'],
        )
