import logging
from contextlib import nullcontext

import numpy as np

from boundary_liouville.exceptions import ConvergenceError, DomainError
from cli.base import RunCommand
from cli.evaluation import REQUIRED, SWEEP_TARGETS, add_point_arguments, evaluate, point_from_options
from cli.records import SweepRow, finite
from special_functions.coupling import LiouvilleCoupling
from special_functions.lattice import pole_guard
from structure_constants.identities import REJECTIONS

logger = logging.getLogger(__name__)

AXES = ('alpha', 'beta', 'beta1', 'beta2', 'beta3', 'sigma1', 'sigma2', 'sigma3')


# tabulate a structure constant along one parameter
class Command(RunCommand):
    help = "Sweep U, G, R or H along one parameter, CSV with a skipped column"
    name = 'sweep'
    default_format = 'csv'

    def add_arguments(self, parser):
        parser.add_argument('target', choices=SWEEP_TARGETS)
        parser.add_argument('--axis', required=True, choices=AXES)
        parser.add_argument('--start', type=float, required=True)
        parser.add_argument('--stop', type=float, required=True)
        parser.add_argument('--steps', type=int, default=100)
        parser.add_argument('--pole-distance', dest='pole_distance', type=float,
                            help='skip points closer than this to a pole lattice')
        add_point_arguments(parser)
        super().add_arguments(parser)

    def run(self, config, options):
        target, axis = options['target'], options['axis']
        coupling = LiouvilleCoupling(config.gamma)
        base = point_from_options(options)
        distance = options.get('pole_distance')
        missing = [name for name in REQUIRED[target] if name != axis and name not in base]
        if missing:
            raise DomainError(f"{target} needs --{', --'.join(missing)} besides the swept {axis}")

        rows = []
        for value in np.linspace(options['start'], options['stop'], options['steps']):
            value = float(value)
            try:
                with pole_guard(distance) if distance else nullcontext():
                    result, _, _ = evaluate(target, {**base, axis: value}, coupling)
                result = complex(result)
                if not finite(result):
                    raise ConvergenceError("non-finite value")
            except REJECTIONS as error:
                logger.warning("%s at %s=%g skipped: %s", target, axis, value, error)
                rows.append(SweepRow(target=target, axis=axis, value=value, skipped=True,
                                     reason=f"{type(error).__name__}: {error}"))
                continue
            rows.append(SweepRow(target=target, axis=axis, value=value, value_re=result.real, value_im=result.imag))

        skipped = sum(row.skipped for row in rows)
        self.status(True, f"{target} over {axis}: {len(rows)} rows, {skipped} skipped")
        self.emit(config, rows)
        return 0
