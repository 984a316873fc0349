"""The double sine S_{γ/2}(x) = Γ_{γ/2}(x) / Γ_{γ/2}(Q - x).

Scalar values go through the double gamma quotient. The contour integrals need
ln S on thousands of points at once, so ``log_double_sine_array`` works in
numpy: the real part of the argument is reduced next to Q/2 with the shift
equation S(x + χ) = 2 sin(πχx) S(x), then either the closed leading asymptotic
(far from the real axis, where the corrections are below double precision) or

    ln S(x) = ∫_0^∞ dt/t [ 2c/t - sinh(ct) / (2 sinh(γt/4) sinh(t/γ)) ],  c = x - Q/2

by composite Gauss-Legendre in t.
"""
import cmath
import logging
import math
from functools import lru_cache

import numpy as np
from django.conf import settings
from numpy.polynomial.legendre import leggauss

from boundary_liouville.exceptions import DomainError, PoleError
from special_functions.double_gamma import (
    log_double_gamma_extended,
    sinh_product_coefficients,
)
from special_functions.lattice import current_pole_tolerance, pole_report, zero_report

logger = logging.getLogger(__name__)

NODES_PER_PANEL = 20
# e^{-2π·b_min·|Im x|} below 1e-17 past this many 1/b_min
EXACT_ASYMPTOTIC_HEIGHT = 6.5
# points per vectorized block of the t quadrature
BLOCK = 256


@lru_cache(maxsize=4)
def _legendre(n):
    return leggauss(n)


def log_double_sine(x, coupling, factor=None):
    """Scalar ln S_{γ/2}(x); PoleError on the pole and on the zero lattice."""
    x = complex(x)
    name = factor or f"S({x:.6g})"
    zero = zero_report(x, coupling)
    if zero.is_pole:
        raise PoleError(f"double sine zero at {x:.6g}", factor=name, report=zero)
    return (
        log_double_gamma_extended(x, coupling, name)
        - log_double_gamma_extended(coupling.q_charge - x, coupling, name)
    )


def double_sine(x, coupling):
    x = complex(x)
    report = pole_report(x, coupling)
    if report.is_pole:
        return report
    if zero_report(x, coupling).is_pole:
        return 0j
    return cmath.exp(log_double_sine(x, coupling))


def log_double_sine_asymptotic(x, coupling):
    x = np.asarray(x, dtype=complex)
    q = coupling.q_charge
    sign = np.where(x.imag >= 0, 1.0, -1.0)
    return -sign * 0.5j * np.pi * (x * (x - q) + (q * q + 1.0) / 6.0)


def double_sine_asymptotic(x, coupling, threshold=None):
    """Leading behaviour exp(∓iπ/2·(x(x-Q) + (Q²+1)/6)) as Im x → ±∞."""
    x = complex(x)
    if threshold is None:
        threshold = settings.BCFT_SPECIAL['asymptotic_threshold']
    if abs(x.imag) <= threshold:
        raise DomainError(
            f"asymptotic form needs |Im x| > {threshold:g}, got {x.imag:g}"
        )
    return cmath.exp(complex(log_double_sine_asymptotic(x, coupling)))


def log_two_sine(z):
    """log(2 sin z) without overflow for large |Im z|."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    upper = z.imag >= 0
    zu, zl = z[upper], z[~upper]
    # 2 sin z = i e^{-iz}(1 - e^{2iz}) = -i e^{iz}(1 - e^{-2iz})
    out[upper] = 0.5j * np.pi - 1j * zu + np.log1p(-np.exp(2j * zu))
    out[~upper] = -0.5j * np.pi + 1j * zl + np.log1p(-np.exp(-2j * zl))
    return out


def _check_lattices(x, coupling):
    # both lattices are real, only points hugging the axis need the scalar scan
    tolerance = current_pole_tolerance()
    for value in x[np.abs(x.imag) < tolerance]:
        for report, kind in ((pole_report(value, coupling), 'pole'),
                             (zero_report(value, coupling), 'zero')):
            if report.is_pole:
                raise PoleError(
                    f"double sine {kind} at {complex(value):.6g}",
                    factor=f"S({complex(value):.6g})",
                    report=report,
                )


def _small_t(c, t_cut, coupling):
    # the bracket is -2 Σ_k g_k t^{2k-1}, g_k = Σ_{i+j=k} c^{2i+1} d_j / (2i+1)!
    d = sinh_product_coefficients(coupling)
    total = np.zeros_like(c)
    for k in range(1, len(d)):
        g_k = sum(
            c ** (2 * i + 1) * d[k - i] / math.factorial(2 * i + 1)
            for i in range(k + 1)
        )
        total += -2.0 * g_k * t_cut ** (2 * k - 1) / (2 * k - 1)
    return total


def _integral_block(c, coupling):
    q, b, big_b = coupling.q_charge, coupling.b, coupling.big_b
    t_cut = min(settings.BCFT_SPECIAL['t_cut'],
                0.1 / max(1.0, float(np.max(np.abs(c))), big_b))
    upper = 80.0 / coupling.b_max
    panel = min(1.0, 4.0 / max(1.0, float(np.max(np.abs(c.imag)))))

    n_panels = int(math.ceil((upper - t_cut) / panel))
    edges = np.linspace(t_cut, upper, n_panels + 1)
    nodes, weights = _legendre(NODES_PER_PANEL)
    half = 0.5 * np.diff(edges)
    t = (0.5 * (edges[:-1] + edges[1:])[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()

    kernel = np.exp(-q * t / 2.0) / (np.expm1(-b * t) * np.expm1(-big_b * t))
    values = np.empty_like(c)
    for start in range(0, c.size, BLOCK):
        cc = c[start:start + BLOCK, None]
        integrand = (2.0 * cc / t - 2.0 * np.sinh(cc * t) * kernel) / t
        values[start:start + BLOCK] = integrand @ w

    return values + _small_t(c, t_cut, coupling) + 2.0 * c / upper


def log_double_sine_array(x, coupling):
    """Vectorized ln S_{γ/2}; the branch of the imaginary part is arbitrary."""
    x = np.asarray(x, dtype=complex)
    shape = x.shape
    x = x.ravel()
    _check_lattices(x, coupling)

    q = coupling.q_charge
    chi = coupling.b_min
    k = np.rint((x.real - q / 2.0) / chi).astype(int)
    reduced = x - k * chi

    correction = np.zeros_like(x)
    for step in range(1, int(k.max(initial=0)) + 1):
        mask = k >= step
        correction[mask] += log_two_sine(np.pi * chi * (x[mask] - step * chi))
    for step in range(int(-k.min(initial=0))):
        mask = k <= -(step + 1)
        correction[mask] -= log_two_sine(np.pi * chi * (x[mask] + step * chi))

    out = np.empty_like(x)
    far = np.abs(reduced.imag) > EXACT_ASYMPTOTIC_HEIGHT / chi
    out[far] = log_double_sine_asymptotic(reduced[far], coupling)

    near = np.flatnonzero(~far)
    if near.size:
        c = reduced[near] - q / 2.0
        # group by oscillation so each group gets its own panel length
        octave = np.ceil(np.log2(np.maximum(1.0, np.abs(c.imag)))).astype(int)
        for level in np.unique(octave):
            members = octave == level
            out[near[members]] = _integral_block(c[members], coupling)
    return (out + correction).reshape(shape)
