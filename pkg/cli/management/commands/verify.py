from cli.base import RunCommand
from structure_constants.identities import DEFAULT_SUITES, IDENTITIES
from structure_constants.verification import GridSpec, verify_identity


# run functional-equation suites over quasi-random grids
class Command(RunCommand):
    help = "Check the functional equations and special values, one JSON line per suite"
    name = 'verify'

    def add_arguments(self, parser):
        parser.add_argument('--suite', default='all', choices=('all', *IDENTITIES))
        parser.add_argument('--points', type=int, help='admissible points per gamma')
        parser.add_argument('--gammas', type=float, nargs='+', help='overrides the default gamma list')
        parser.add_argument('--tol', type=float, help='one tolerance for every suite that runs')
        super().add_arguments(parser)

    def run(self, config, options):
        names = DEFAULT_SUITES if options['suite'] == 'all' else (options['suite'],)
        grid = {'seed': config.mc_budget.seed, 'contour': config.contour}
        if options.get('gammas'):
            grid['gammas'] = options['gammas']
        elif options.get('gamma') is not None:
            grid['gammas'] = [config.gamma]
        if options.get('points'):
            grid['n_points'] = options['points']
        grid = GridSpec(**grid)

        reports = []
        for name in names:
            tol = options['tol'] if options.get('tol') is not None else config.tolerances[name]
            report = verify_identity(name, grid, tol, worker_count=config.threads)
            self.status(report.passed, f"{name}: {report.max_residual:.3g} over {report.n_points} points (tol {tol:g})")
            reports.append(report)
        self.emit(config, reports)
        return sum(not report.passed for report in reports)
