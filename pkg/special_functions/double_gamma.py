"""The double gamma function Γ_{γ/2}.

Inside the strip ``strip_low <= Re x <= Q + strip_margin`` the defining integral

    ln Γ(x) = ∫_0^∞ dt/t [ (e^{-xt} - e^{-Qt/2}) / ((1 - e^{-γt/2})(1 - e^{-2t/γ}))
                           - (Q/2 - x)²/2 · e^{-t} + (x - Q/2)/t ]

is evaluated directly: a Taylor series of the bracket below ``t_cut``, scipy's
adaptive quadrature on [t_cut, T], and the algebraic tail c/T - (c²/2)E1(T)
beyond T. Everywhere else the shift equations

    Γ(x) / Γ(x + χ) = Γ(χx) χ^{1/2 - χx} / √(2π),   χ ∈ {γ/2, 2/γ}

carry the argument into the strip.
"""
import cmath
import logging
import math
from functools import lru_cache

import numpy as np
from django.conf import settings
from scipy.integrate import quad
from scipy.special import exp1

from boundary_liouville.exceptions import PoleError, QuadratureError
from special_functions.coupling import LiouvilleCoupling
from special_functions.gamma import LOG_SQRT_TWO_PI, complex_log_gamma
from special_functions.lattice import pole_report

logger = logging.getLogger(__name__)

# taylor coefficients of u / sinh(u)
SINH_RECIPROCAL = (1.0, -1.0 / 6.0, 7.0 / 360.0, -31.0 / 15120.0, 127.0 / 604800.0)

# highest power of t kept in the small-t series of the bracket
SERIES_ORDER = 7


def sinh_product_coefficients(coupling):
    """Coefficients d_j with t²/(4 sinh(γt/4) sinh(t/γ)) = Σ d_j t^{2j}."""
    half_b, half_big_b = coupling.b / 2.0, coupling.big_b / 2.0
    coefficients = []
    for j in range(len(SINH_RECIPROCAL)):
        coefficients.append(sum(
            SINH_RECIPROCAL[n] * SINH_RECIPROCAL[j - n]
            * half_b ** (2 * n) * half_big_b ** (2 * (j - n))
            for n in range(j + 1)
        ))
    return coefficients


def _small_t_integral(c, t_cut, coupling):
    # bracket = Σ_p e_p t^p for p >= 1, so ∫_0^{t_cut} bracket dt/t = Σ e_p t_cut^p / p
    d = sinh_product_coefficients(coupling)
    total = 0j
    for p in range(1, SERIES_ORDER + 1):
        e_p = -(c * c / 2.0) * (-1.0) ** p / math.factorial(p)
        for i in range(1, p + 3):
            if (p + 2 - i) % 2:
                continue
            j = (p + 2 - i) // 2
            if j < len(d):
                e_p += (-c) ** i * d[j] / math.factorial(i)
        total += e_p * t_cut ** p / p
    return total


def _bracket(t, x, coupling):
    q = coupling.q_charge
    c = x - q / 2.0
    if t < 1.0:
        numerator = np.exp(-q * t / 2.0) * np.expm1(-c * t)
    else:
        numerator = np.exp(-x * t) - np.exp(-q * t / 2.0)
    denominator = np.expm1(-coupling.b * t) * np.expm1(-coupling.big_b * t)
    return (numerator / denominator - (c * c / 2.0) * np.exp(-t) + c / t) / t


def _quad_complex(func, low, high, tolerance, limit):
    value = 0j
    error = 0.0
    for part, picker in (('real', np.real), ('imag', np.imag)):
        result = quad(
            lambda t: float(picker(func(t))),
            low, high,
            epsabs=tolerance, epsrel=tolerance, limit=limit, full_output=1,
        )
        piece, piece_error = result[0], result[1]
        if len(result) > 3:
            logger.debug("quad on [%g, %g] (%s): %s", low, high, part, result[3])
        value += piece if part == 'real' else 1j * piece
        error += piece_error
    return value, error


@lru_cache(maxsize=65536)
def _log_double_gamma_strip(x, gamma, tolerance):
    coupling = LiouvilleCoupling(gamma)
    special = settings.BCFT_SPECIAL
    q = coupling.q_charge
    c = x - q / 2.0

    t_cut = min(special['t_cut'], 0.1 / max(1.0, abs(c), coupling.big_b))
    series = _small_t_integral(c, t_cut, coupling)

    # e^{-min(Re x, Q/2) t} bounds the exponential part of the bracket
    decay = min(x.real, q / 2.0)
    upper = max(10.0, math.log(10.0 / tolerance) / decay + 5.0)
    cuts = [t_cut] + [t for t in (1.0, 10.0) if t_cut < t < upper] + [upper]

    body = 0j
    error = 0.0
    for low, high in zip(cuts[:-1], cuts[1:]):
        piece, piece_error = _quad_complex(
            lambda t: _bracket(t, x, coupling), low, high,
            tolerance / len(cuts), special['quad_limit'],
        )
        body += piece
        error += piece_error
    # quad's error estimate is pessimistic, only a real failure trips this
    if error > 1e4 * tolerance * max(1.0, abs(body)):
        raise QuadratureError(
            f"double gamma quadrature at x={x:.6g} stopped with error {error:.3g}"
        )

    tail = c / upper - (c * c / 2.0) * exp1(upper)
    return complex(series + body + tail)


def log_double_gamma(x, coupling, tolerance=None):
    """ln Γ_{γ/2}(x) straight from the defining integral, Re x > 0."""
    x = complex(x)
    if x.real <= 0:
        raise ValueError("log_double_gamma integrates only for Re(x) > 0")
    if tolerance is None:
        tolerance = settings.BCFT_SPECIAL['quad_tolerance']
    return _log_double_gamma_strip(x, coupling.gamma, tolerance)


def log_shift_factor(x, chi, coupling, factor=None):
    """ln of Γ(x)/Γ(x+χ) = ln[Γ(χx) χ^{1/2-χx} / √(2π)]."""
    x = complex(x)
    return (
        complex_log_gamma(chi * x, factor)
        + (0.5 - chi * x) * math.log(chi)
        - LOG_SQRT_TWO_PI
    )


def double_gamma_shift_factor(x, chi, coupling):
    return cmath.exp(log_shift_factor(x, chi, coupling))


def log_double_gamma_extended(x, coupling, factor=None):
    """Meromorphic ln Γ_{γ/2}(x) on the whole plane; PoleError on the lattice.

    The imaginary part is a branch of the logarithm, fine for products and
    quotients that get exponentiated afterwards.
    """
    x = complex(x)
    report = pole_report(x, coupling)
    if report.is_pole:
        raise PoleError(
            f"double gamma pole at {report.describe()}",
            factor=factor or f"Gamma2({x:.6g})",
            report=report,
        )

    special = settings.BCFT_SPECIAL
    low = special['strip_low']
    high = coupling.q_charge + special['strip_margin']
    chi = coupling.b_max

    # Γ(x) = f(x) Γ(x + χ) going up, Γ(x) = Γ(x - χ) / f(x - χ) going down
    correction = 0j
    steps = 0
    while x.real < low:
        correction += log_shift_factor(x, chi, coupling, factor)
        x += chi
        steps += 1
    while x.real > high:
        x -= chi
        correction -= log_shift_factor(x, chi, coupling, factor)
        steps += 1
    if steps:
        logger.debug("double gamma shifted %d times by %g", steps, chi)
    return correction + log_double_gamma(x, coupling)


def double_gamma(x, coupling):
    """Γ_{γ/2}(x), or the PoleReport when x sits on the pole lattice."""
    report = pole_report(x, coupling)
    if report.is_pole:
        return report
    return cmath.exp(log_double_gamma_extended(x, coupling))


def log_t_double_gamma(t, coupling, factor=None):
    """ln[t·Γ_{γ/2}(t)], finite through the pole at t = 0."""
    t = complex(t)
    b = coupling.b
    # t Γ(t) = t f_b(t) Γ(t + b) and t Γ(bt) = Γ(1 + bt) / b
    return (
        complex_log_gamma(1.0 + b * t, factor)
        - math.log(b)
        + (0.5 - b * t) * math.log(b)
        - LOG_SQRT_TWO_PI
        + log_double_gamma_extended(t + b, coupling, factor)
    )
