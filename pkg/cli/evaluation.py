"""Point evaluation shared by the eval and sweep commands."""
from django.conf import settings

from boundary_liouville.exceptions import DomainError
from structure_constants.bulk import bar_G, bar_U
from structure_constants.contour import contour_options
from structure_constants.correlators import assemble_correlator, unbarred
from structure_constants.interval import bar_H_interval, interval_betas, interval_moment_M
from structure_constants.parametrization import BetaTriple, SigmaTriple, sigma_from_mu
from structure_constants.three_point import bar_H
from structure_constants.two_point import bar_R

EVAL_KINDS = ('U', 'G', 'R', 'H', 'H_interval', 'correlator')
SWEEP_TARGETS = ('U', 'G', 'R', 'H')

REQUIRED = {
    'U': ('alpha',),
    'G': ('alpha', 'beta'),
    'R': ('beta',),
    'H': ('beta1', 'beta2', 'beta3'),
    'H_interval': ('p',),
}
SIGMAS = {'R': 2, 'H': 3}
POSITIONS = {'U': ('z',), 'G': ('z', 's1'), 'R': ('s1', 's2'), 'H': ('s1', 's2', 's3')}

# every flag a point can carry, complex unless listed in REAL_PARAMS
POINT_PARAMS = (
    'alpha', 'beta', 'beta1', 'beta2', 'beta3',
    'sigma1', 'sigma2', 'sigma3', 'mu1', 'mu2', 'mu3',
    'p', 'a', 'b', 'z', 's1', 's2', 's3', 'mu_b',
)
REAL_PARAMS = ('p', 'a', 'b', 'mu_b')


def add_point_arguments(parser):
    for name in POINT_PARAMS:
        parser.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float if name in REAL_PARAMS else complex)
    parser.add_argument('--variant', choices=('direct', 'cyclic', 'reflected'), default='direct')


def point_from_options(options):
    point = {name: options[name] for name in POINT_PARAMS if options.get(name) is not None}
    point['variant'] = options.get('variant') or 'direct'
    return point


def _require(kind, point, names):
    missing = [name for name in names if name not in point]
    if missing:
        raise DomainError(f"{kind} needs --{', --'.join(name.replace('_', '-') for name in missing)}")


def resolve_point(kind, point, coupling):
    """Fill the arc variables: σ_k from --sigmaK, else from --muK, else Q/2 (μ = 1)."""
    _require(kind, point, REQUIRED[kind])
    point = dict(point)
    if kind != 'H':
        point.pop('variant', None)
    for k in range(1, SIGMAS.get(kind, 0) + 1):
        if f'sigma{k}' not in point:
            mu = point.get(f'mu{k}')
            point[f'sigma{k}'] = coupling.q_charge / 2.0 if mu is None else sigma_from_mu(mu, coupling)
    return point


def _triples(point):
    betas = BetaTriple(point['beta1'], point['beta2'], point['beta3'])
    return betas, SigmaTriple(point['sigma1'], point['sigma2'], point['sigma3'])


def barred_value(kind, point, coupling):
    """(value, absolute error estimate) of a barred structure constant."""
    closed_form = settings.BCFT_SPECIAL['quad_tolerance']
    if kind == 'U':
        value = bar_U(point['alpha'], coupling)
    elif kind == 'G':
        value = bar_G(point['alpha'], point['beta'], coupling)
    elif kind == 'R':
        value = bar_R(point['beta'], point['sigma1'], point['sigma2'], coupling)
    elif kind == 'H':
        value = bar_H(*_triples(point), coupling, variant=point.get('variant', 'direct'))
        return value, abs(value) * contour_options()['tolerance']
    elif kind == 'H_interval':
        betas = interval_betas(point['p'], point.get('a', 0.0), point.get('b', 0.0), coupling)
        value = bar_H_interval(betas, coupling)
        # two independent assemblies of the same number
        check = interval_moment_M(point['p'], point.get('a', 0.0), point.get('b', 0.0), coupling)
        return value, abs(value - check)
    else:
        raise DomainError(f"unknown kind {kind!r}, expected one of {EVAL_KINDS}")
    return value, abs(value) * closed_form


def correlator_value(kind, point, coupling):
    _require(f"correlator {kind}", point, POSITIONS[kind])
    barred, error = barred_value(kind, point, coupling)
    betas = _triples(point)[0] if kind == 'H' else None
    constant = unbarred(kind, barred, coupling, alpha=point.get('alpha'), beta=point.get('beta'),
                        betas=betas, mu_b=point.get('mu_b'))
    positions = [point[name] for name in POSITIONS[kind]]
    value = assemble_correlator(kind, positions, constant, coupling, alpha=point.get('alpha'),
                                beta=point.get('beta'), betas=betas)
    return value, error * abs(value) / max(abs(barred), 1e-300)


def evaluate(kind, point, coupling, correlator_kind=None):
    """Value, error estimate and the resolved parameters of one point."""
    if kind == 'correlator':
        if correlator_kind not in POSITIONS:
            raise DomainError(f"correlator needs --kind in {tuple(POSITIONS)}")
        point = resolve_point(correlator_kind, point, coupling)
        value, error = correlator_value(correlator_kind, point, coupling)
        return value, error, point
    point = resolve_point(kind, point, coupling)
    value, error = barred_value(kind, point, coupling)
    return value, error, point
