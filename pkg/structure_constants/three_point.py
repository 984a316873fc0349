"""The boundary three-point constant H̄(β1, β2, β3 | σ1, σ2, σ3).

H̄ is an elementary prefactor times the Barnes integral 𝓙. Everything is summed in
log space and exponentiated once at the end.
"""
import cmath
import logging
import math

from boundary_liouville.exceptions import DomainError
from special_functions.double_gamma import log_double_gamma_extended
from special_functions.double_sine import log_double_sine
from special_functions.gamma import complex_log_gamma
from structure_constants.contour import contour_J_log, contour_options
from structure_constants.parametrization import BetaTriple
from structure_constants.two_point import log_bar_R

logger = logging.getLogger(__name__)

VARIANTS = ('direct', 'cyclic', 'reflected')


def log_prefactor_H(betas, sigmas, coupling):
    g, q = coupling.gamma, coupling.q_charge
    b1, b2, b3 = betas
    s1, s2, s3 = sigmas
    bb = betas.beta_bar
    depth = (2.0 * q - bb) / g

    total = (
        (depth + 1.0) * math.log(2.0 * math.pi)
        + ((g / 2.0 - 2.0 / g) * (q - bb / 2.0) - 1.0) * math.log(2.0 / g)
        - depth * math.lgamma(1.0 - g * g / 4.0)
        - complex_log_gamma((bb - 2.0 * q) / g, 'Gamma((beta_bar - 2Q)/gamma)')
    )

    numerator = (
        (2.0 * q - bb / 2.0, 'Gamma2(2Q - beta_bar/2)'),
        ((b1 + b3 - b2) / 2.0, 'Gamma2((beta1 + beta3 - beta2)/2)'),
        (q - (b1 + b2 - b3) / 2.0, 'Gamma2(Q - (beta1 + beta2 - beta3)/2)'),
        (q - (b2 + b3 - b1) / 2.0, 'Gamma2(Q - (beta2 + beta3 - beta1)/2)'),
    )
    denominator = (
        (q, 'Gamma2(Q)'),
        (q - b1, 'Gamma2(Q - beta1)'),
        (q - b2, 'Gamma2(Q - beta2)'),
        (q - b3, 'Gamma2(Q - beta3)'),
    )
    for x, name in numerator:
        total += log_double_gamma_extended(x, coupling, name)
    for x, name in denominator:
        total -= log_double_gamma_extended(x, coupling, name)

    total += 0.5j * math.pi * (
        -(2.0 * q - b1 / 2.0 - s1 - s2) * (q - b1 / 2.0 - s1 - s2)
        + (q + b2 / 2.0 - s2 - s3) * (b2 / 2.0 - s2 - s3)
        + (q + b3 / 2.0 - s1 - s3) * (b3 / 2.0 - s1 - s3)
        - 2.0 * s3 * (2.0 * s3 - q)
    )
    total -= log_double_sine(b1 / 2.0 + s1 - s2, coupling, 'S(beta1/2 + sigma1 - sigma2)')
    total -= log_double_sine(b3 / 2.0 + s3 - s1, coupling, 'S(beta3/2 + sigma3 - sigma1)')
    return total


def log_bar_H_direct(betas, sigmas, coupling, spec=None, allow_residues=False, crossed=None, tolerance=None):
    log_j = contour_J_log(
        betas, sigmas, coupling, spec=spec, tolerance=tolerance,
        allow_residues=allow_residues, crossed=crossed,
    )
    return log_prefactor_H(betas, sigmas, coupling) + log_j


def log_reflection_factor_H(betas, sigmas, coupling):
    """ln of H̄(β1,...) / H̄(2Q - β1,...), up to the sign in front."""
    g, q = coupling.gamma, coupling.q_charge
    b1, b2, b3 = betas
    s1, s2, _ = sigmas
    return (
        complex_log_gamma(2.0 * b1 / g - 4.0 / (g * g), 'Gamma(2beta1/gamma - 4/gamma^2)')
        + complex_log_gamma((b2 + b3 - b1) / g, 'Gamma((beta2 + beta3 - beta1)/gamma)')
        - complex_log_gamma((betas.beta_bar - 2.0 * q) / g, 'Gamma((beta_bar - 2Q)/gamma)')
        + log_bar_R(b1, s1, s2, coupling)
    )


def bar_H(betas, sigmas, coupling, variant='direct', spec=None, allow_residues=False, crossed=None, tolerance=None):
    """H̄ through one of three rewrites of the same meromorphic function.

    ``cyclic`` relabels insertions and arcs (β2, β3, β1 | σ2, σ3, σ1) before integrating;
    ``reflected`` integrates at 2Q - β1 and multiplies back through the reflection principle.
    A contour ``spec`` only applies to the integral that is actually evaluated.
    """
    if variant not in VARIANTS:
        raise DomainError(f"unknown bar_H variant {variant!r}, expected one of {VARIANTS}")
    options = dict(spec=spec, allow_residues=allow_residues, crossed=crossed, tolerance=tolerance)

    if variant == 'direct':
        log_value = log_bar_H_direct(betas, sigmas, coupling, **options)
    elif variant == 'cyclic':
        log_value = log_bar_H_direct(betas.cyclic(), sigmas.cyclic(), coupling, **options)
    else:
        mirrored = betas.replace(beta1=2.0 * coupling.q_charge - betas.beta1)
        log_value = (
            log_reflection_factor_H(betas, sigmas, coupling)
            + log_bar_H_direct(mirrored, sigmas, coupling, **options)
        )
        return -cmath.exp(log_value)
    return cmath.exp(log_value)


def bar_H_scaling_factor(betas, amount, coupling):
    """H̄(β | σ + A) / H̄(β | σ)."""
    return cmath.exp(1j * math.pi * amount * (2.0 * coupling.q_charge - betas.beta_bar))


def _special_value_mean(beta2, beta3, centre, offset, sigmas, coupling):
    values = [
        bar_H(BetaTriple(centre + side * offset, beta2, beta3), sigmas, coupling, crossed=(2,))
        for side in (-1.0, 1.0)
    ]
    logger.debug("special value sides at offset %g: %s", offset, values)
    return sum(values) / 2.0


def bar_H_special_value(beta2, beta3, sigmas, coupling, offset=None):
    """H̄ at β1 = 2Q - β2 - β3, which is 1.

    The left lattice of S(β3/2 + δ1 + r) meets the right lattice of
    1/S(2Q - β1/2 - β2/2 + δ1 + r) exactly there. The mean of the residue-corrected
    integrals on either side carries an error ∝ offset², removed by one Richardson
    step between ``offset`` and ``offset / 2``.
    """
    if offset is None:
        offset = contour_options()['collision_offset']
    centre = 2.0 * coupling.q_charge - complex(beta2) - complex(beta3)
    wide = _special_value_mean(beta2, beta3, centre, offset, sigmas, coupling)
    narrow = _special_value_mean(beta2, beta3, centre, offset / 2.0, sigmas, coupling)
    return (4.0 * narrow - wide) / 3.0


def richardson_ladder(values, ratio=2.0):
    """Two Richardson levels for a first-order error on a geometric ε ladder."""
    if len(values) != 3:
        raise DomainError(f"the ladder needs three values, got {len(values)}")
    first = [(ratio * fine - coarse) / (ratio - 1.0) for coarse, fine in zip(values[:-1], values[1:])]
    return (ratio * ratio * first[1] - first[0]) / (ratio * ratio - 1.0)


def limit_H_to_R(beta1, beta2, sigmas, coupling, eps=(1e-2, 5e-3, 2.5e-3)):
    """(β2 + β3 - β1) H̄ as β3 → β1 - β2, against 2(Q - β1) R̄(β1, σ1, σ2).

    Returns the extrapolated limit, the values along the ladder and the target.
    """
    beta1, beta2 = complex(beta1), complex(beta2)
    values = []
    for step in eps:
        betas = BetaTriple(beta1, beta2, beta1 - beta2 + step)
        values.append(step * bar_H(betas, sigmas, coupling, allow_residues=True))
    extrapolated = richardson_ladder(values, ratio=eps[0] / eps[1])
    target = 2.0 * (coupling.q_charge - beta1) * cmath.exp(
        log_bar_R(beta1, sigmas.sigma1, sigmas.sigma2, coupling)
    )
    logger.debug("limit ladder %s -> %s, target %s", values, extrapolated, target)
    return extrapolated, values, target
