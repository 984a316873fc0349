"""Both sides of every functional equation the structure constants obey.

Each identity draws its parameters from a unit-cube point, so the same quasi-random
grid serves every suite. ``sides`` returns pairs (lhs, rhs); a point's residual is the
worst pair.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from typing import Callable

from boundary_liouville.exceptions import (
    ContourCollisionError,
    ConvergenceError,
    DomainError,
    PoleError,
)
from special_functions.coupling import LiouvilleCoupling
from special_functions.double_gamma import double_gamma_shift_factor, log_double_gamma_extended
from special_functions.gamma import complex_log_gamma
from special_functions.lattice import pole_guard
from structure_constants.bulk import (
    bar_G,
    bar_G_dual_shift,
    bar_G_gamma_shift,
    bar_G_reflection_factor,
    bar_U,
)
from structure_constants.contour import contour_override
from structure_constants.interval import bar_H_interval, interval_betas, interval_moment_M
from structure_constants.parametrization import BetaTriple, SigmaTriple
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
)

logger = logging.getLogger(__name__)


def residual(lhs, rhs):
    scale = abs(lhs) + abs(rhs)
    if scale == 0:
        return 0.0
    return abs(lhs - rhs) / scale


def _between(u, low, high):
    return low + (high - low) * u


def _log_shift_constant(chi, coupling):
    # χ² (2π)^{2χ/γ - 1} / Γ(1 - γ²/4)^{2χ/γ}
    g = coupling.gamma
    return (
        2.0 * math.log(chi)
        + (2.0 * chi / g - 1.0) * math.log(2.0 * math.pi)
        - (2.0 * chi / g) * math.lgamma(1.0 - g * g / 4.0)
    )


def shift_H_1_sides(betas, sigmas, chi, coupling):
    """H̄(β|σ) = A1 H̄(β1-χ, β2+χ, β3 | σ2+χ/2) - A2 H̄(β1+χ, β2+χ, β3 | σ2+χ/2)."""
    g, q = coupling.gamma, coupling.q_charge
    b1, b2, b3 = betas
    s1, s2, _ = sigmas
    bb = betas.beta_bar
    lg = complex_log_gamma
    moved = sigmas.replace(sigma2=s2 + chi / 2.0)

    a1 = cmath.exp(
        lg(chi * (b1 - chi)) + lg(1.0 - chi * b2)
        - lg(1.0 - (chi / 2.0) * (b2 + b3 - b1))
        - lg((chi / 2.0) * (b1 + b3 - b2 - 2.0 * chi))
    )
    a2 = cmath.exp(
        _log_shift_constant(chi, coupling) + math.log(math.pi)
        + lg((bb - 2.0 / chi) / g) + lg(1.0 - chi * b1) + lg(1.0 - chi * b2)
        - lg((bb - 2.0 * q) / g)
        - lg(1.0 + chi * (q - bb / 2.0))
        - lg(1.0 - (chi / 2.0) * (b1 + b2 - b3))
    )
    a2 *= (
        2j * cmath.exp(1j * math.pi * chi * (b1 / 2.0 - chi + s1 + s2))
        * cmath.sin(math.pi * chi * (b1 / 2.0 - s1 + s2))
        / cmath.sin(math.pi * chi * (b1 - chi))
    )
    lhs = bar_H(betas, sigmas, coupling)
    down = bar_H(BetaTriple(b1 - chi, b2 + chi, b3), moved, coupling)
    up = bar_H(BetaTriple(b1 + chi, b2 + chi, b3), moved, coupling)
    return [(lhs, a1 * down - a2 * up)]


def shift_H_2_sides(betas, sigmas, chi, coupling):
    """The second shift equation, relating H̄ at β1, β1 + 2χ and (β1 + χ, β2 + χ)."""
    g, q = coupling.gamma, coupling.q_charge
    b1, b2, b3 = betas
    s1, s2, s3 = sigmas
    bb = betas.beta_bar
    lg = complex_log_gamma
    constant = _log_shift_constant(chi, coupling)
    moved = sigmas.replace(sigma2=s2 + chi / 2.0)

    left = cmath.exp(
        constant + lg((bb - 2.0 / chi) / g) + lg(1.0 - chi * b2) - lg((bb - 2.0 * q) / g)
    )
    left *= (
        2j * cmath.exp(1j * math.pi * chi * (b2 / 2.0 - chi + s2 + s3))
        * cmath.sin(math.pi * chi * (b2 / 2.0 + s2 - s3))
    )
    c1 = cmath.exp(
        lg(chi * b1) - lg((chi / 2.0) * (bb - 2.0 * q)) - lg((chi / 2.0) * (b1 + b2 - b3))
    )
    c2 = cmath.exp(
        constant + math.log(math.pi)
        + lg((bb - 2.0 / chi) / g) + lg(1.0 - chi * b1 - chi * chi)
        - lg((bb - 2.0 * q) / g)
        - lg((chi / 2.0) * (b2 + b3 - b1 - 2.0 * chi))
        - lg(1.0 - (chi / 2.0) * (b1 + b3 - b2))
    )
    c2 *= (
        2j * cmath.exp(1j * math.pi * chi * (-b1 / 2.0 - chi + s1 + s2))
        * cmath.sin(math.pi * chi * (-b1 / 2.0 - s1 + s2))
        / cmath.sin(math.pi * chi * b1)
    )
    up = bar_H(BetaTriple(b1 + chi, b2 + chi, b3), moved, coupling)
    base = bar_H(betas, sigmas, coupling)
    far = bar_H(BetaTriple(b1 + 2.0 * chi, b2, b3), sigmas, coupling)
    return [(left * up, c1 * base - c2 * far)]


def _g_params(u, coupling):
    q = coupling.q_charge
    return {'alpha': _between(u[0], q / 2.0, q + 0.3), 'beta': _between(u[1], -0.5, q - 0.3)}


def _r_params(u, coupling):
    g, q = coupling.gamma, coupling.q_charge
    return {
        'beta': _between(u[0], g / 2.0 + 0.1, q - 0.1),
        'sigma1_re': _between(u[1], -0.15, 0.15),
        'sigma1_im': _between(u[2], -0.5, 0.5),
        'sigma2_re': _between(u[3], -0.15, 0.15),
        'sigma2_im': _between(u[4], -0.5, 0.5),
    }


def _r_sigmas(params, coupling):
    half = coupling.q_charge / 2.0
    return (
        complex(half + params['sigma1_re'], params['sigma1_im']),
        complex(half + params['sigma2_re'], params['sigma2_im']),
    )


def _h_params(u, coupling):
    q = coupling.q_charge
    params = {f'beta{k + 1}': _between(u[k], 0.7 * q, 0.92 * q) for k in range(3)}
    params.update({f'sigma{k + 1}': _between(u[3 + k], -0.15, 0.15) for k in range(3)})
    return params


def _h_dual_params(u, coupling):
    """A draw where H̄ stays on the integral with χ = 2/γ steps in β1 and β2.

    Moving β2 and σ2 by χ and χ/2 pushes the lattice at -(Q - β2/2 + δ2) right by χ,
    so β3 sits near Q, β2 - β1 ≈ χ - γ/2 and σ1 - σ2 is large. Every lattice gap of the
    shifted evaluations stays above 0.1 for γ ≥ 0.8.
    """
    h, chi, q = coupling.b, coupling.big_b, coupling.q_charge
    width = _between(u[1], 0.1, 0.2)
    beta2 = chi + _between(u[0], 0.4, 0.5)
    beta1 = beta2 - (chi - h + 0.2 + width)
    beta3 = q + 0.8 * width * _between(u[2], -1.0, 1.0)
    # δ2 = σ3 - σ2 keeps Re(Q - β2/2 - δ2) at 0.2
    delta2 = q - beta2 / 2.0 - 0.2
    delta1 = delta2 - (chi + 0.1 - beta1 / 2.0 + _between(u[3], 0.0, 0.05))
    centre = _between(u[4], -0.1, 0.1)
    return {
        'beta1': beta1, 'beta2': beta2, 'beta3': beta3,
        'sigma1': centre - delta1, 'sigma2': centre - delta2, 'sigma3': centre,
    }


def _g_reflect_params(u, coupling):
    g, q = coupling.gamma, coupling.q_charge
    return {'alpha': _between(u[0], q / 2.0, q + 0.3), 'beta': _between(u[1], g / 2.0 + 0.1, q - 0.1)}


def _scale_params(u, coupling):
    params = _h_params(u, coupling)
    params['shift_re'] = _between(u[6], -0.2, 0.2)
    params['shift_im'] = _between(u[7], -0.3, 0.3)
    return params


def _h_point(params, coupling):
    half = coupling.q_charge / 2.0
    betas = BetaTriple(params['beta1'], params['beta2'], params['beta3'])
    sigmas = SigmaTriple(*(half + params[f'sigma{k}'] for k in (1, 2, 3)))
    return betas, sigmas


def _interval_params(u, coupling):
    power = 4.0 / coupling.gamma ** 2
    return {
        'p': _between(u[0], -1.0, min(1.5, 0.9 * power)),
        'a': _between(u[1], -0.4, 0.6),
        'b': _between(u[2], -0.4, 0.6),
    }


def _shift_G_gamma(params, coupling):
    alpha, beta = params['alpha'], params['beta']
    g = coupling.gamma
    return [(bar_G(alpha, beta + g, coupling), bar_G_gamma_shift(alpha, beta, coupling) * bar_G(alpha, beta, coupling))]


def _shift_G_dual(params, coupling):
    alpha, beta = params['alpha'], params['beta']
    big = 4.0 / coupling.gamma
    return [(bar_G(alpha, beta + big, coupling), bar_G_dual_shift(alpha, beta, coupling) * bar_G(alpha, beta, coupling))]


def _reflect_G(params, coupling):
    alpha, beta = params['alpha'], params['beta']
    mirrored = 2.0 * coupling.q_charge - beta
    return [(
        bar_G(alpha, beta, coupling),
        bar_G_reflection_factor(alpha, beta, coupling) * bar_G(alpha, mirrored, coupling),
    )]


def _shift_R_gamma(params, coupling):
    beta = params['beta']
    s1, s2 = _r_sigmas(params, coupling)
    lhs = bar_R(beta, s1, s2, coupling)
    return [
        (lhs, bar_R_gamma_shift_rhs(beta, s1, s2, coupling)),
        (lhs, bar_R_half_shift_rhs(beta, s1, s2, coupling)),
    ]


def _shift_R_dual(params, coupling):
    beta = params['beta']
    s1, s2 = _r_sigmas(params, coupling)
    return [(bar_R(beta, s1, s2, coupling), bar_R_dual_shift_rhs(beta, s1, s2, coupling))]


def _reflect_R(params, coupling):
    beta = params['beta']
    s1, s2 = _r_sigmas(params, coupling)
    product = bar_R(beta, s1, s2, coupling) * bar_R(2.0 * coupling.q_charge - beta, s1, s2, coupling)
    return [(product, bar_R_reflection_product(beta, coupling))]


def _shift_H_1(params, coupling):
    betas, sigmas = _h_point(params, coupling)
    return shift_H_1_sides(betas, sigmas, coupling.b, coupling)


def _shift_H_2(params, coupling):
    betas, sigmas = _h_point(params, coupling)
    return shift_H_2_sides(betas, sigmas, coupling.b, coupling)


def _shift_H_1_dual(params, coupling):
    betas, sigmas = _h_point(params, coupling)
    return shift_H_1_sides(betas, sigmas, coupling.big_b, coupling)


def _shift_H_2_dual(params, coupling):
    betas, sigmas = _h_point(params, coupling)
    return shift_H_2_sides(betas, sigmas, coupling.big_b, coupling)


def _reflect_H(params, coupling):
    betas, sigmas = _h_point(params, coupling)
    return [(bar_H(betas, sigmas, coupling), bar_H(betas, sigmas, coupling, variant='reflected'))]


def _scale_H(params, coupling):
    betas, sigmas = _h_point(params, coupling)
    amount = complex(params['shift_re'], params['shift_im'])
    return [(
        bar_H(betas, sigmas.shifted(amount), coupling),
        bar_H_scaling_factor(betas, amount, coupling) * bar_H(betas, sigmas, coupling),
    )]


def _cyclic_H(params, coupling):
    betas, sigmas = _h_point(params, coupling)
    return [(bar_H(betas, sigmas, coupling, variant='cyclic'), bar_H(betas, sigmas, coupling))]


def _interval_reduction(params, coupling):
    p, a, b = params['p'], params['a'], params['b']
    return [(bar_H_interval(interval_betas(p, a, b, coupling), coupling), interval_moment_M(p, a, b, coupling))]


def _special_values(params, coupling):
    q = coupling.q_charge
    half = SigmaTriple.uniform(q / 2.0)
    kind = params['kind']
    if kind == 'double_gamma':
        return [(cmath.exp(log_double_gamma_extended(q / 2.0, coupling)), 1.0)]
    if kind == 'R':
        return [(bar_R(q, q / 2.0, q / 2.0, coupling), 1.0)]
    if kind == 'U':
        return [(bar_U(q, coupling), 1.0)]
    if kind == 'G':
        alpha = params['alpha']
        return [(bar_G(alpha, 0.0, coupling), bar_U(alpha, coupling))]
    if kind == 'shift_factor':
        # Γ2(x)/Γ2(x + γ/2) at x = Q/2 against the direct quotient
        x = q / 2.0
        direct = cmath.exp(
            log_double_gamma_extended(x, coupling) - log_double_gamma_extended(x + coupling.b, coupling)
        )
        return [(double_gamma_shift_factor(x, coupling.b, coupling), direct)]
    beta = 0.52 * q
    return [(bar_H_special_value(beta, beta, half, coupling), 1.0)]


def _limit_H_to_R(params, coupling):
    extrapolated, _, target = limit_H_to_R(
        params['beta1'], params['beta2'], SigmaTriple.uniform(coupling.q_charge / 2.0), coupling
    )
    return [(extrapolated, target)]


def special_value_points(coupling):
    q = coupling.q_charge
    points = [{'kind': kind} for kind in ('double_gamma', 'R', 'U', 'shift_factor', 'H')]
    points += [{'kind': 'G', 'alpha': q * f} for f in (0.6, 0.8, 1.1)]
    return points


def limit_points(coupling):
    """β1 = 2/γ + fγ/2 just above the bulk-boundary threshold, β2 = β1/2."""
    points = []
    for f in (0.4, 0.6, 0.8):
        beta1 = coupling.big_b + f * coupling.b
        points.append({'beta1': beta1, 'beta2': beta1 / 2.0})
    return points


@dataclass(frozen=True)
class Identity:
    name: str
    sides: Callable
    # unit-cube dimension of the quasi-random grid, 0 for fixed points
    dimension: int = 0
    draw: Callable = None
    fixed_points: Callable = None


IDENTITIES = {
    identity.name: identity
    for identity in (
        Identity('shift_G_gamma', _shift_G_gamma, 2, _g_params),
        Identity('shift_G_dual', _shift_G_dual, 2, _g_params),
        Identity('reflect_G', _reflect_G, 2, _g_reflect_params),
        Identity('shift_R_gamma', _shift_R_gamma, 5, _r_params),
        Identity('shift_R_dual', _shift_R_dual, 5, _r_params),
        Identity('reflect_R', _reflect_R, 5, _r_params),
        Identity('shift_H_1', _shift_H_1, 6, _h_params),
        Identity('shift_H_2', _shift_H_2, 6, _h_params),
        Identity('reflect_H', _reflect_H, 6, _h_params),
        Identity('scale_H', _scale_H, 8, _scale_params),
        Identity('limit_H_to_R', _limit_H_to_R, fixed_points=limit_points),
        Identity('special_values', _special_values, fixed_points=special_value_points),
        Identity('shift_H_1_dual', _shift_H_1_dual, 5, _h_dual_params),
        Identity('shift_H_2_dual', _shift_H_2_dual, 5, _h_dual_params),
        Identity('cyclic_H', _cyclic_H, 6, _h_params),
        Identity('interval_reduction', _interval_reduction, 3, _interval_params),
    )
}

# run only when named with --suite
EXTRA_SUITES = ('reflect_G', 'shift_H_1_dual', 'shift_H_2_dual', 'cyclic_H', 'interval_reduction')
# what `verify --suite all` runs
DEFAULT_SUITES = tuple(name for name in IDENTITIES if name not in EXTRA_SUITES)


# a grid point that lands on one of these is dropped, not failed
REJECTIONS = (PoleError, ContourCollisionError, ConvergenceError, DomainError)


def evaluate_point(identity, gamma, params, index, pole_distance=None, contour=None):
    """Worst residual of one point; with ``pole_distance`` set, near-pole points are rejected.

    Fixed points run without the guard and let every error through. ``contour``
    overrides BCFT_CONTOUR for this point only.
    """
    coupling = LiouvilleCoupling(gamma)
    entry = IDENTITIES[identity]
    with contour_override(contour):
        if pole_distance is None:
            pairs = entry.sides(params, coupling)
        else:
            try:
                with pole_guard(pole_distance):
                    pairs = entry.sides(params, coupling)
            except REJECTIONS as error:
                logger.debug("%s point %d at gamma=%g rejected: %s", identity, index, gamma, error)
                return {'index': index, 'status': 'rejected', 'residual': None,
                        'reason': f"{type(error).__name__}: {error}"}
    worst = max(residual(lhs, rhs) for lhs, rhs in pairs)
    if not math.isfinite(worst):
        raise ConvergenceError(f"{identity} point {index} at gamma={gamma:g} produced a non-finite residual")
    return {'index': index, 'status': 'ok', 'residual': float(worst), 'reason': ''}
