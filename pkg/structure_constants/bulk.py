"""Bulk one-point Ū(α) and bulk-boundary Ḡ(α, β), plus the right-hand sides of the
two shift equations and the reflection in β that Ḡ obeys."""
import cmath
import math

from special_functions.double_gamma import log_double_gamma_extended
from special_functions.gamma import complex_log_gamma
from structure_constants.two_point import bar_R


def _log_gamma_quarter(coupling):
    # ln Γ(1 - γ²/4), real since 1 - γ²/4 lies in (0, 1)
    return math.lgamma(1.0 - coupling.gamma ** 2 / 4.0)


def log_bar_U(alpha, coupling):
    g = coupling.gamma
    alpha = complex(alpha)
    log_base = -(g * alpha / 2.0) * math.log(2.0) + math.log(2.0 * math.pi) - _log_gamma_quarter(coupling)
    return (
        (2.0 / g) * (coupling.q_charge - alpha) * log_base
        + complex_log_gamma(g * alpha / 2.0 - g * g / 4.0, 'Gamma(gamma*alpha/2 - gamma^2/4)')
    )


def bar_U(alpha, coupling):
    """(2^{-γα/2} 2π / Γ(1-γ²/4))^{(2/γ)(Q-α)} Γ(γα/2 - γ²/4)."""
    return cmath.exp(log_bar_U(alpha, coupling))


def log_bar_G(alpha, beta, coupling):
    g, q = coupling.gamma, coupling.q_charge
    alpha, beta = complex(alpha), complex(beta)

    log_base = (
        (g / 2.0) * (beta / 2.0 - alpha) * math.log(2.0)
        + math.log(2.0 * math.pi)
        - _log_gamma_quarter(coupling)
    )
    total = (2.0 / g) * (q - alpha - beta / 2.0) * log_base
    total += complex_log_gamma(
        g * alpha / 2.0 + g * beta / 4.0 - g * g / 4.0,
        'Gamma(gamma*alpha/2 + gamma*beta/4 - gamma^2/4)',
    )

    numerator = (
        (alpha - beta / 2.0, 'Gamma2(alpha - beta/2)'),
        (alpha + beta / 2.0, 'Gamma2(alpha + beta/2)'),
        (q - beta / 2.0, 'Gamma2(Q - beta/2)'),
        (q - beta / 2.0, 'Gamma2(Q - beta/2)'),
    )
    denominator = (
        (q - beta, 'Gamma2(Q - beta)'),
        (alpha, 'Gamma2(alpha)'),
        (alpha, 'Gamma2(alpha)'),
        (q, 'Gamma2(Q)'),
    )
    for x, name in numerator:
        total += log_double_gamma_extended(x, coupling, name)
    for x, name in denominator:
        total -= log_double_gamma_extended(x, coupling, name)
    return total


def bar_G(alpha, beta, coupling):
    return cmath.exp(log_bar_G(alpha, beta, coupling))


def bar_G_gamma_shift(alpha, beta, coupling):
    """Ḡ(α, β + γ) / Ḡ(α, β)."""
    g = coupling.gamma
    alpha, beta = complex(alpha), complex(beta)
    log_ratio = (
        _log_gamma_quarter(coupling)
        - (g * beta / 2.0) * math.log(2.0)
        - math.log(math.pi)
        + complex_log_gamma(g * alpha / 2.0 - g * beta / 4.0 - g * g / 4.0)
        + 2.0 * complex_log_gamma(1.0 - g * beta / 4.0)
        - complex_log_gamma(g * alpha / 2.0 + g * beta / 4.0 - g * g / 4.0)
        - complex_log_gamma(1.0 - g * beta / 2.0)
        - complex_log_gamma(1.0 - g * beta / 2.0 - g * g / 4.0)
    )
    return cmath.exp(log_ratio)


def bar_G_dual_shift(alpha, beta, coupling):
    """Ḡ(α, β + 4/γ) / Ḡ(α, β)."""
    g = coupling.gamma
    alpha, beta = complex(alpha), complex(beta)
    power = 4.0 / (g * g)
    log_ratio = (
        2.0 * math.log(g)
        + power * _log_gamma_quarter(coupling)
        - (2.0 * beta / g + 1.0) * math.log(2.0)
        - power * math.log(2.0 * math.pi)
        + complex_log_gamma(2.0 * alpha / g - beta / g - power)
        + 2.0 * complex_log_gamma(1.0 - beta / g)
        - complex_log_gamma(-1.0 + 2.0 * alpha / g + beta / g)
        - complex_log_gamma(1.0 - 2.0 * beta / g)
        - complex_log_gamma(1.0 - 2.0 * beta / g - power)
    )
    return cmath.exp(log_ratio)


def bar_G_reflection_factor(alpha, beta, coupling):
    """Ḡ(α, β) / Ḡ(α, 2Q - β).

    -Γ(2β/γ - 4/γ²) Γ(2α/γ - β/γ) / Γ(-1 + 2α/γ + β/γ - 4/γ²) R̄(β, 1, 1)
    """
    g, q = coupling.gamma, coupling.q_charge
    alpha, beta = complex(alpha), complex(beta)
    power = 4.0 / (g * g)
    log_ratio = (
        complex_log_gamma(2.0 * beta / g - power, 'Gamma(2beta/gamma - 4/gamma^2)')
        + complex_log_gamma(2.0 * alpha / g - beta / g, 'Gamma(2alpha/gamma - beta/gamma)')
        - complex_log_gamma(-1.0 + 2.0 * alpha / g + beta / g - power)
    )
    return -cmath.exp(log_ratio) * bar_R(beta, q / 2.0, q / 2.0, coupling)
