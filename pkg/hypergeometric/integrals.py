"""Ray integrals ∫_{ℝ₊e^{iθ0}} ((1+u)^g - 1) u^{-b} du and ∫ ((1+u)^g - u^g) u^{-b} du.

Both equal Γ(1-b)Γ(-1+b-g)/Γ(-g) on their parameter windows, whatever the ray
angle. The ray is cut at r = 1 and the piece beyond is mapped back to (0, 1]
with r = 1/s, so every piece is a finite interval whose endpoint singularities
are algebraic and handled by QUADPACK's algebraic weight. At θ0 = ±π the ray
runs through u = -1 just above (+π) or below (-π) it; the indentation is taken
in the limit of zero radius, which is exact because (1+u)^g is integrable there.
"""
import cmath
import math

import numpy as np
from scipy.integrate import quad

from boundary_liouville.exceptions import DomainError
from special_functions.gamma import complex_gamma

SHIFTED_ONE = 'shifted_one'
SHIFTED_POWER = 'shifted_power'
VARIANTS = (SHIFTED_ONE, SHIFTED_POWER)


def _weighted(func, low, high, alpha=0.0, beta=0.0):
    """∫_low^high func(r) (r-low)^α (high-r)^β dr for complex func."""
    value = 0j
    for picker, unit in ((np.real, 1.0), (np.imag, 1j)):
        result = quad(
            lambda r: float(picker(func(r))), low, high,
            weight='alg', wvar=(alpha, beta), epsabs=1e-13, epsrel=1e-12, limit=200,
        )
        value += unit * result[0]
    return value


def _check_window(g, b, theta0, variant):
    if variant not in VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    if not -1.0 < g < 1.0:
        raise DomainError(f"g must lie in (-1, 1), got {g}")
    if variant == SHIFTED_ONE and not max(1.0, 1.0 + g) < b < 2.0:
        raise DomainError(f"shifted_one needs max(1, 1+g) < b < 2, got b={b}")
    if variant == SHIFTED_POWER and not g < b < min(1.0, 1.0 + g):
        raise DomainError(f"shifted_power needs g < b < min(1, 1+g), got b={b}")
    if not -math.pi <= theta0 <= math.pi:
        raise DomainError(f"theta0 must lie in [-pi, pi], got {theta0}")


def _open_ray(g, b, theta, variant):
    e = cmath.exp(1j * theta)
    if variant == SHIFTED_ONE:
        # [0, 1]: ((1+re)^g - 1)/r against r^{1-b}
        def near(r):
            if r == 0:
                return cmath.exp(1j * (1 - b) * theta) * g * e
            return cmath.exp(1j * (1 - b) * theta) * ((1 + r * e) ** g - 1) / r

        inner = _weighted(near, 0.0, 1.0, alpha=1.0 - b)
        outer = _weighted(
            lambda s: cmath.exp(1j * (g - b + 1) * theta) * (1 + s / e) ** g,
            0.0, 1.0, alpha=b - g - 2.0,
        )
        outer -= cmath.exp(1j * (1 - b) * theta) / (b - 1)
        return inner + outer

    inner = _weighted(
        lambda r: cmath.exp(1j * (1 - b) * theta) * (1 + r * e) ** g,
        0.0, 1.0, alpha=-b,
    )
    inner -= cmath.exp(1j * (1 + g - b) * theta) / (1 + g - b)

    def far(s):
        if s == 0:
            return cmath.exp(1j * (g - b + 1) * theta) * g / e
        return cmath.exp(1j * (g - b + 1) * theta) * ((1 + s / e) ** g - 1) / s

    return inner + _weighted(far, 0.0, 1.0, alpha=b - g - 1.0)


def _through_minus_one(g, b, side, variant):
    # u = -r ± i0, du = -dr, (1+u)^g = (r-1)^g e^{±iπg} past u = -1
    turn = cmath.exp(1j * side * math.pi * g)
    total = 0j
    if variant == SHIFTED_ONE:
        def near(r):
            if r == 0:
                return -g
            return ((1 - r) ** g - 1) / r

        total += _weighted(near, 0.0, 0.5, alpha=1.0 - b)
        total += _weighted(lambda r: r ** -b, 0.5, 1.0, beta=g)
        total -= (1 - 0.5 ** (1 - b)) / (1 - b)
        total += turn * _weighted(lambda r: r ** -b, 1.0, 2.0, alpha=g)
        total -= (2 ** (1 - b) - 1) / (1 - b)
        total += turn * _weighted(lambda s: (1 - s) ** g, 0.0, 0.5, alpha=b - g - 2.0)
        total -= 0.5 ** (b - 1) / (b - 1)
    else:
        exponent = 1 + g - b

        def far(s):
            if s == 0:
                return -g
            return ((1 - s) ** g - 1) / s

        total += _weighted(lambda r: (1 - r) ** g, 0.0, 0.5, alpha=-b)
        total -= turn * 0.5 ** exponent / exponent
        total += _weighted(lambda r: r ** -b, 0.5, 1.0, beta=g)
        total -= turn * (1 - 0.5 ** exponent) / exponent
        total += turn * _weighted(lambda r: r ** -b, 1.0, 2.0, alpha=g)
        total -= turn * (2 ** exponent - 1) / exponent
        total += turn * _weighted(far, 0.0, 0.5, alpha=b - g - 1.0)
    return -cmath.exp(-1j * side * math.pi * b) * total


def useful_integral(g, b, theta0, variant=SHIFTED_ONE):
    """Numeric value of the ray integral at angle ``theta0``."""
    _check_window(g, b, theta0, variant)
    if abs(abs(theta0) - math.pi) < 1e-12:
        # zero-radius indentation at u = -1, not a finite semicircle
        return _through_minus_one(g, b, 1 if theta0 > 0 else -1, variant)
    return _open_ray(g, b, theta0, variant)


def useful_integral_closed_form(g, b):
    return complex_gamma(1 - b) * complex_gamma(-1 + b - g) / complex_gamma(-g)
