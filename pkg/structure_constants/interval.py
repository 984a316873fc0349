"""Closed forms that reach the GMC moments: H̄ with μ1 = μ3 = 0, μ2 = 1 and the
moments of the exact laws of the chaos mass on the interval and on the circle."""
import cmath
import math

from boundary_liouville.exceptions import DomainError
from special_functions.beta_laws import beta10_log_moment, beta22_log_moment
from special_functions.double_gamma import log_double_gamma_extended
from special_functions.gamma import LOG_SQRT_TWO_PI
from structure_constants.parametrization import BetaTriple


def log_bar_H_interval(betas, coupling):
    g, q, big_b = coupling.gamma, coupling.q_charge, coupling.big_b
    b1, b2, b3 = betas
    bb = betas.beta_bar
    depth = (2.0 * q - bb) / g

    total = (
        (depth + 1.0) * math.log(2.0 * math.pi)
        + ((g / 2.0 - 2.0 / g) * (q - bb / 2.0) - 1.0) * math.log(2.0 / g)
        - depth * math.lgamma(1.0 - g * g / 4.0)
    )
    # Γ2(t)/Γ(2t/γ) = (2/γ)^{1/2 - 2t/γ} Γ2(t + 2/γ) / √(2π), t = β̄/2 - Q
    t = bb / 2.0 - q
    total += (0.5 + depth) * math.log(big_b) - LOG_SQRT_TWO_PI
    total += log_double_gamma_extended(t + big_b, coupling, 'Gamma2(beta_bar/2 - Q + 2/gamma)')

    numerator = (
        ((b1 + b3 - b2) / 2.0, 'Gamma2((beta1 + beta3 - beta2)/2)'),
        ((b2 + b3 - b1) / 2.0, 'Gamma2((beta2 + beta3 - beta1)/2)'),
        (q - (b1 + b2 - b3) / 2.0, 'Gamma2(Q - (beta1 + beta2 - beta3)/2)'),
    )
    denominator = (
        (q, 'Gamma2(Q)'),
        (q - b1, 'Gamma2(Q - beta1)'),
        (q - b2, 'Gamma2(Q - beta2)'),
        (b3, 'Gamma2(beta3)'),
    )
    for x, name in numerator:
        total += log_double_gamma_extended(x, coupling, name)
    for x, name in denominator:
        total -= log_double_gamma_extended(x, coupling, name)
    return total


def bar_H_interval(betas, coupling):
    """H̄(β1, β2, β3 | μ1 = 0, μ2 = 1, μ3 = 0)."""
    return cmath.exp(log_bar_H_interval(betas, coupling))


def interval_betas(p, a, b, coupling):
    """The weights at which H̄ with a single unit arc is the interval moment M(p, a, b)."""
    g = coupling.gamma
    beta1 = -2.0 * a / g
    beta2 = -2.0 * b / g
    return BetaTriple(beta1, beta2, 2.0 * coupling.q_charge - beta1 - beta2 - g * p)


def _log_y_moment(p, coupling):
    # E[Y^p] with Y = Γ(1-γ²/4)^{-1} ℰ^{-γ²/4}, ℰ a unit exponential
    g2 = coupling.gamma ** 2
    if 1.0 - p * g2 / 4.0 <= 0:
        raise DomainError(f"moment p={p} needs p < 4/gamma^2 = {4.0 / g2:.6g}")
    return math.lgamma(1.0 - p * g2 / 4.0) - p * math.lgamma(1.0 - g2 / 4.0)


def fyodorov_bouchaud_log_moment(p, coupling):
    """ln E[mass^p] for the total chaos mass of the unit circle."""
    return _log_y_moment(p, coupling)


def check_interval_range(p, a, b, coupling):
    """DomainError unless E[M^p] is finite for the weight x^a (1-x)^b."""
    power = 4.0 / coupling.gamma ** 2
    if p >= power:
        raise DomainError(f"moment p={p} needs p < 4/gamma^2 = {power:.6g}")
    for name, weight in (('a', a), ('b', b)):
        if p >= 1.0 + power * (1.0 + weight):
            raise DomainError(
                f"moment p={p} diverges at the endpoint with {name}={weight}, "
                f"needs p < {1.0 + power * (1.0 + weight):.6g}"
            )


def interval_log_moment(p, a, b, coupling):
    """ln M(p, a, b) = ln E[(∫_0^1 x^a (1-x)^b e^{γX/2} dx)^p] from the product law."""
    g = coupling.gamma
    if p == 0:
        return 0.0
    check_interval_range(p, a, b, coupling)
    power = 4.0 / (g * g)
    total = (
        p * math.log(2.0 * math.pi)
        - p * (3.0 * (1.0 + g * g / 4.0) + 2.0 * (a + b)) * math.log(2.0)
        # lognormal L = exp(N(0, γ² ln 2))
        + p * p * g * g * math.log(2.0) / 2.0
        + _log_y_moment(p, coupling)
    )
    factors = (
        (1.0 + power * (1.0 + a), 2.0 * (b - a) / (g * g), 2.0 * (b - a) / (g * g)),
        (1.0 + (2.0 / (g * g)) * (2.0 + a + b), 0.5, 2.0 / (g * g)),
        (1.0 + power, 0.5 + (2.0 / (g * g)) * (1.0 + a + b), 0.5 + (2.0 / (g * g)) * (1.0 + a + b)),
    )
    for b0, b1, b2 in factors:
        total += beta22_log_moment(-p, 1.0, power, b0, b1, b2)
    return total


def interval_moment_M(p, a, b, coupling):
    return math.exp(interval_log_moment(p, a, b, coupling))


def circle_insertion_log_moment(p, beta, coupling):
    """ln E[mass^p] for the circle chaos weighted by |e^{iθ} - 1|^{-γβ/2}."""
    g = coupling.gamma
    if p == 0:
        return 0.0
    power = 4.0 / (g * g)
    total = (
        -p * math.lgamma(1.0 - g * g / 4.0)
        + p * (g * g / 4.0) * math.log(power)
    )
    total += beta22_log_moment(-p, 1.0, power, power, 1.0 + beta / g, 1.0 + beta / g)
    total += beta10_log_moment(-p, power, 2.0 * beta / g + power + 1.0)
    return total
