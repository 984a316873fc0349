from boundary_liouville.exceptions import ConvergenceError
from cli.base import RunCommand
from cli.evaluation import EVAL_KINDS, POSITIONS, add_point_arguments, evaluate, point_from_options
from cli.records import EvalRecord, finite, plain
from special_functions.coupling import LiouvilleCoupling


# evaluate one structure constant or correlator
class Command(RunCommand):
    help = "Evaluate U, G, R, H, H_interval or a half-plane correlator at one point"
    name = 'eval'

    def add_arguments(self, parser):
        parser.add_argument('kind', choices=EVAL_KINDS)
        parser.add_argument('--kind', dest='correlator_kind', choices=tuple(POSITIONS),
                            help='structure constant behind `eval correlator`')
        add_point_arguments(parser)
        super().add_arguments(parser)

    def run(self, config, options):
        kind = options['kind']
        value, error, point = evaluate(
            kind, point_from_options(options), LiouvilleCoupling(config.gamma), options.get('correlator_kind')
        )
        value = complex(value)
        if not finite(value):
            raise ConvergenceError(f"{kind} overflowed at {point}")

        record = EvalRecord(
            kind=kind if kind != 'correlator' else f"correlator_{options['correlator_kind']}",
            gamma=config.gamma,
            params={name: plain(complex(v)) if isinstance(v, (int, float, complex)) else v for name, v in point.items()},
            value_re=value.real,
            value_im=value.imag,
            abs_error_estimate=float(error),
        )
        self.status(True, f"{record.kind} = {value.real:.15g} {value.imag:+.15g}i (+- {error:.2g})")
        self.emit(config, [record])
        return 0
