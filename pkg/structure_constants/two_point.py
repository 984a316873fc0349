"""The boundary two-point constant R̄(β, μ1, μ2) in σ-variables and its functional equations."""
import cmath
import math

from special_functions.double_gamma import log_double_gamma_extended, log_t_double_gamma
from special_functions.double_sine import log_double_sine
from special_functions.gamma import complex_log_gamma
from structure_constants.parametrization import mu_from_sigma, sigma_from_mu


def _log_elementary(beta, coupling):
    # (2π)^{(2/γ)(Q-β) - 1/2} (2/γ)^{(γ/2)(Q-β) - 1/2} / Γ(1-γ²/4)^{(2/γ)(Q-β)}
    g = coupling.gamma
    depth = coupling.q_charge - beta
    return (
        ((2.0 / g) * depth - 0.5) * math.log(2.0 * math.pi)
        + ((g / 2.0) * depth - 0.5) * math.log(2.0 / g)
        - (2.0 / g) * depth * math.lgamma(1.0 - g * g / 4.0)
    )


def _log_bar_R_without_arcs(beta, coupling):
    # everything except the phase and the two double sines; (Q-β)Γ2(Q-β) stays finite at β = Q
    return (
        _log_elementary(beta, coupling)
        + log_double_gamma_extended(beta - coupling.gamma / 2.0, coupling, 'Gamma2(beta - gamma/2)')
        - log_t_double_gamma(coupling.q_charge - beta, coupling, '(Q-beta)Gamma2(Q-beta)')
    )


def log_bar_R(beta, sigma1, sigma2, coupling):
    beta, sigma1, sigma2 = complex(beta), complex(sigma1), complex(sigma2)
    q = coupling.q_charge
    return (
        _log_bar_R_without_arcs(beta, coupling)
        + 1j * math.pi * (sigma1 + sigma2 - q) * (q - beta)
        - log_double_sine(beta / 2.0 + sigma2 - sigma1, coupling, 'S(beta/2 + sigma2 - sigma1)')
        - log_double_sine(beta / 2.0 + sigma1 - sigma2, coupling, 'S(beta/2 + sigma1 - sigma2)')
    )


def bar_R(beta, sigma1, sigma2, coupling):
    return cmath.exp(log_bar_R(beta, sigma1, sigma2, coupling))


def bar_R_one_sided(beta, mu, coupling):
    """R̄(β, μ, 0) = R̄(β, 0, μ) for μ >= 0, the limit Im σ → +∞ of the vanishing arc."""
    beta = complex(beta)
    if mu == 0:
        return 0j
    exponent = (2.0 / coupling.gamma) * (coupling.q_charge - beta)
    return cmath.exp(exponent * cmath.log(mu) + _log_bar_R_without_arcs(beta, coupling))


def tail_exponent(beta, coupling):
    """P(I > u) decays like u^{tail_exponent} for an insertion of weight β."""
    return -2.0 * (coupling.q_charge - beta) / coupling.gamma


def tail_coefficient(beta, mu1, mu2, coupling):
    """R̄(β, μ1, μ2) for non-negative real μ, at most one of them zero."""
    if mu1 == 0 or mu2 == 0:
        return bar_R_one_sided(beta, mu1 + mu2, coupling)
    return bar_R(beta, sigma_from_mu(mu1, coupling), sigma_from_mu(mu2, coupling), coupling)


def bar_R_half_shift_rhs(beta, sigma1, sigma2, coupling):
    """Right-hand side of R̄(β,σ1,σ2) = K · R̄(β+γ/2, σ1, σ2+γ/4)."""
    g = coupling.gamma
    beta = complex(beta)
    mu1, mu2 = mu_from_sigma(sigma1, coupling), mu_from_sigma(sigma2, coupling)
    factor = -cmath.exp(
        complex_log_gamma(-1.0 + g * beta / 2.0 - g * g / 4.0)
        + complex_log_gamma(2.0 - g * beta / 2.0)
        - math.lgamma(1.0 - g * g / 4.0)
    ) * (mu1 - mu2 * cmath.exp(1j * math.pi * g * beta / 2.0))
    return factor * bar_R(beta + g / 2.0, sigma1, complex(sigma2) + g / 4.0, coupling)


def bar_R_gamma_shift_rhs(beta, sigma1, sigma2, coupling):
    """Right-hand side of the combined shift R̄(β) = K · R̄(β+γ), arcs unchanged."""
    g = coupling.gamma
    beta = complex(beta)
    mu1, mu2 = mu_from_sigma(sigma1, coupling), mu_from_sigma(sigma2, coupling)
    turn = cmath.exp(1j * math.pi * g * beta / 2.0)
    factor = -cmath.exp(
        complex_log_gamma(-1.0 + g * beta / 2.0 - g * g / 4.0)
        + complex_log_gamma(2.0 - g * beta / 2.0 - g * g / 4.0)
        - 2.0 * math.lgamma(1.0 - g * g / 4.0)
    ) * math.pi / cmath.sin(math.pi * g * beta / 2.0)
    factor *= (mu1 - mu2 * turn) * (mu1 - mu2 / turn)
    return factor * bar_R(beta + g, sigma1, sigma2, coupling)


def bar_R_dual_shift_rhs(beta, sigma1, sigma2, coupling):
    """Right-hand side of R̄(β) = K · R̄(β+4/γ), arcs unchanged."""
    g, q = coupling.gamma, coupling.q_charge
    beta = complex(beta)
    power = 4.0 / (g * g)
    # μ^{4/γ²} continued through σ
    dual1 = cmath.exp(1j * math.pi * (4.0 / g) * (complex(sigma1) - q / 2.0))
    dual2 = cmath.exp(1j * math.pi * (4.0 / g) * (complex(sigma2) - q / 2.0))
    turn = cmath.exp(2j * math.pi * beta / g)
    log_factor = (
        2.0 * power * math.log(2.0 * math.pi)
        - 2.0 * math.log(g)
        - 2.0 * power * math.lgamma(1.0 - g * g / 4.0)
    )
    factor = cmath.exp(log_factor) / (
        (q - beta) * (g / 2.0 - beta)
        * cmath.sin(2.0 * math.pi * beta / g)
        * cmath.sin(math.pi * (2.0 * beta / g + power))
    )
    factor *= (dual1 - dual2 * turn) * (dual1 - dual2 / turn)
    return factor * bar_R(beta + 4.0 / g, sigma1, sigma2, coupling)


def bar_R_reflection_product(beta, coupling):
    """R̄(β)R̄(2Q-β) = 1 / (Γ(1 - 2(Q-β)/γ) Γ(1 + 2(Q-β)/γ))."""
    x = 2.0 * (coupling.q_charge - complex(beta)) / coupling.gamma
    # Γ(1-x)Γ(1+x) = πx / sin(πx)
    if x == 0:
        return 1.0 + 0j
    return cmath.sin(math.pi * x) / (math.pi * x)
