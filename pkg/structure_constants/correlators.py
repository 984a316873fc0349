"""From barred constants to the correlation functions on the upper half-plane."""
import cmath
import math

from boundary_liouville.exceptions import DomainError
from special_functions.gamma import complex_log_gamma
from structure_constants.parametrization import BetaTriple, conformal_weight

KINDS = ('U', 'G', 'R', 'H')


def _log_mu_b(mu_b, kind):
    if mu_b is None or mu_b <= 0:
        raise DomainError(f"{kind} needs a positive bulk boundary cosmological constant mu_B, got {mu_b}")
    return math.log(mu_b)


def unbarred(kind, barred_value, coupling, alpha=None, beta=None, betas=None, mu_b=None):
    """Multiply a barred constant by its Γ prefactor (and the μ_B power for U, G)."""
    g, q = coupling.gamma, coupling.q_charge
    if kind == 'U':
        alpha = complex(alpha)
        log_mu = _log_mu_b(mu_b, kind)
        log_factor = (
            math.log(2.0 / g)
            + complex_log_gamma(2.0 * (alpha - q) / g, 'Gamma(2(alpha - Q)/gamma)')
            + (2.0 * (q - alpha) / g) * log_mu
        )
        return cmath.exp(log_factor) * barred_value
    if kind == 'G':
        alpha, beta = complex(alpha), complex(beta)
        log_mu = _log_mu_b(mu_b, kind)
        log_factor = (
            math.log(2.0 / g)
            + complex_log_gamma((2.0 * alpha + beta - 2.0 * q) / g, 'Gamma((2alpha + beta - 2Q)/gamma)')
            + ((2.0 * q - 2.0 * alpha - beta) / g) * log_mu
        )
        return cmath.exp(log_factor) * barred_value
    if kind == 'R':
        beta = complex(beta)
        return -cmath.exp(complex_log_gamma(1.0 - 2.0 * (q - beta) / g, 'Gamma(1 - 2(Q - beta)/gamma)')) * barred_value
    if kind == 'H':
        log_factor = math.log(2.0 / g) + complex_log_gamma(
            (betas.beta_bar - 2.0 * q) / g, 'Gamma((beta_bar - 2Q)/gamma)'
        )
        return cmath.exp(log_factor) * barred_value
    raise DomainError(f"unknown correlator kind {kind!r}, expected one of {KINDS}")


def _bulk(z):
    z = complex(z)
    if z.imag <= 0:
        raise DomainError(f"bulk point {z} is not in the upper half-plane")
    return z


def _boundary(s):
    s = complex(s)
    if s.imag != 0:
        raise DomainError(f"boundary point {s} is not real")
    return s.real


def _distance(x, y):
    distance = abs(x - y)
    if distance == 0:
        raise DomainError(f"coincident points {x} and {y}")
    return distance


def position_factor(kind, positions, coupling, alpha=None, beta=None, betas=None):
    """The universal position dependence the structure constant is divided by."""
    if kind == 'U':
        (z,) = positions
        z = _bulk(z)
        return _distance(z, z.conjugate()) ** (2.0 * conformal_weight(alpha, coupling))
    if kind == 'G':
        z, s = positions
        z, s = _bulk(z), _boundary(s)
        delta_alpha = conformal_weight(alpha, coupling)
        delta_beta = conformal_weight(beta, coupling)
        return (
            _distance(z, z.conjugate()) ** (2.0 * delta_alpha - delta_beta)
            * _distance(z, s) ** (2.0 * delta_beta)
        )
    if kind == 'R':
        s1, s2 = (_boundary(s) for s in positions)
        return _distance(s1, s2) ** (2.0 * conformal_weight(beta, coupling))
    if kind == 'H':
        s1, s2, s3 = (_boundary(s) for s in positions)
        d1, d2, d3 = (conformal_weight(x, coupling) for x in betas)
        return (
            _distance(s1, s2) ** (d1 + d2 - d3)
            * _distance(s1, s3) ** (d1 + d3 - d2)
            * _distance(s2, s3) ** (d2 + d3 - d1)
        )
    raise DomainError(f"unknown correlator kind {kind!r}, expected one of {KINDS}")


def position_exponents_H(betas, coupling):
    d1, d2, d3 = (conformal_weight(x, coupling) for x in betas)
    return d1 + d2 - d3, d1 + d3 - d2, d2 + d3 - d1


def assemble_correlator(kind, positions, structure_constant, coupling, alpha=None, beta=None, betas=None):
    if kind == 'H' and not isinstance(betas, BetaTriple):
        betas = BetaTriple(*betas)
    factor = position_factor(kind, positions, coupling, alpha=alpha, beta=beta, betas=betas)
    return structure_constant / factor


def disk_halfplane_factor(alpha, beta, coupling):
    """2^{(α - β/2)(Q - α - β/2)}, between unit-disk and half-plane normalizations."""
    alpha, beta = complex(alpha), complex(beta)
    return cmath.exp((alpha - beta / 2.0) * (coupling.q_charge - alpha - beta / 2.0) * math.log(2.0))
