"""The Barnes integral 𝓙 = ∫ φ(c + iy) dy of the three-point formula.

φ(r) = S(Q - β2/2 + δ2 + r) S(β3/2 + δ1 + r) S(Q - β3/2 + δ1 + r)
       / [S(Q + β1/2 - β2/2 + δ1 + r) S(2Q - β1/2 - β2/2 + δ1 + r) S(Q + r)] · e^{-iπ(β2/2 + δ2) r}

with δ1 = σ3 - σ1 and δ2 = σ3 - σ2. The three numerator factors put pole lattices to
the left of their starting points, the three denominator factors put lattices to the
right. The contour is the vertical line through the middle of the gap between them.

Along the line y = s·sinh(u); s is the distance to the nearest lattice start, so the
sinh map spends its nodes where φ varies fastest. The integral is composite
Gauss-Legendre in u, doubling the panel count until two passes agree.

A right lattice whose first pole lies left of the left lattices can be crossed
explicitly: the line then passes to the right of that pole and its residue is added
back. With S(Q + ε) ≈ -2πε the correction is φ with that denominator factor removed,
evaluated at the pole.
"""
import logging
import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from boundary_liouville.exceptions import (
    ContourCollisionError,
    ConvergenceError,
    QuadratureError,
)
from special_functions.double_sine import NODES_PER_PANEL, _legendre, log_double_sine_array

logger = logging.getLogger(__name__)

# largest truncation height tried before giving up
MAX_HEIGHT = 4096.0

# BCFT_CONTOUR overrides of the current run, never written back to settings
_contour_override = ContextVar('contour_override', default=None)


def contour_options():
    override = _contour_override.get()
    if not override:
        return settings.BCFT_CONTOUR
    return {**settings.BCFT_CONTOUR, **override}


@contextmanager
def contour_override(options):
    """Evaluate with ``options`` over BCFT_CONTOUR inside this context only."""
    token = _contour_override.set({**(_contour_override.get() or {}), **(options or {})})
    try:
        yield
    finally:
        _contour_override.reset(token)


@dataclass(frozen=True)
class ContourSpec:
    abscissa: float
    # panel length in the sinh-mapped variable
    step: float
    height: float
    left_starts: tuple
    right_starts: tuple
    gap: float
    scale: float = 1.0
    # right lattices whose first pole sits left of the line
    crossed: tuple = ()


class BarnesIntegrand:
    def __init__(self, betas, sigmas, coupling):
        q = coupling.q_charge
        b1, b2, b3 = betas
        s1, s2, s3 = sigmas
        d1, d2 = s3 - s1, s3 - s2
        self.coupling = coupling
        self.numerator = np.array([q - b2 / 2 + d2, b3 / 2 + d1, q - b3 / 2 + d1], dtype=complex)
        self.denominator = np.array([q, q + b1 / 2 - b2 / 2 + d1, 2 * q - b1 / 2 - b2 / 2 + d1], dtype=complex)
        self.linear = -1j * math.pi * (b2 / 2 + d2)
        # decay rates e^{-2πκ|y|} above and below
        self.kappa_up = q - b2 / 2 - d2
        self.kappa_down = q

    @property
    def left_starts(self):
        return tuple(complex(x) for x in -self.numerator)

    @property
    def right_starts(self):
        return tuple(complex(x) for x in self.coupling.q_charge - self.denominator)

    def log_values(self, r):
        r = np.asarray(r, dtype=complex)
        args = np.concatenate([self.numerator[:, None] + r[None, :], self.denominator[:, None] + r[None, :]])
        logs = log_double_sine_array(args, self.coupling)
        return logs[:3].sum(axis=0) - logs[3:].sum(axis=0) + self.linear * r

    def log_residue_term(self, k, pole):
        """ln of φ with the k-th denominator factor removed, at ``pole``."""
        keep = [j for j in range(3) if j != k]
        args = np.concatenate([self.numerator + pole, self.denominator[keep] + pole])
        logs = log_double_sine_array(args, self.coupling)
        return complex(logs[:3].sum() - logs[3:].sum() + self.linear * pole)


def _log_sum(logs):
    logs = np.asarray(logs, dtype=complex)
    shift = float(np.max(logs.real))
    total = np.sum(np.exp(logs - shift))
    if total == 0:
        raise QuadratureError("contour integral cancelled to zero in double precision")
    return shift + np.log(total)


def _tail_height(integrand, abscissa, scale, tolerance):
    # peak of |φ| near the real axis sets the scale the tails are measured against
    y = scale * np.sinh(np.linspace(-4.0, 4.0, 81))
    peak = float(np.max(integrand.log_values(abscissa + 1j * y).real))
    budget = math.log(tolerance / 10.0) + peak

    rate_up = 2.0 * math.pi * integrand.kappa_up.real
    rate_down = 2.0 * math.pi * integrand.kappa_down
    height = 2.0
    while height <= MAX_HEIGHT:
        edges = integrand.log_values(np.array([abscissa + 1j * height, abscissa - 1j * height]))
        # ∫_Y^∞ |φ| ≈ |φ(Y)| / (2πκ)
        if edges[0].real - math.log(rate_up) < budget and edges[1].real - math.log(rate_down) < budget:
            return height
        height *= 2.0
    raise QuadratureError(f"integrand tail above tolerance up to height {MAX_HEIGHT:g}")


def plan_contour(betas, sigmas, coupling, abscissa=None, allow_residues=False, crossed=None, tolerance=None):
    """Place the vertical line between the left and right lattices."""
    contour = contour_options()
    if tolerance is None:
        tolerance = contour['tolerance']
    integrand = BarnesIntegrand(betas, sigmas, coupling)
    if integrand.kappa_up.real <= 0:
        raise ConvergenceError(
            f"Re(Q - sigma3 + sigma2 - beta2/2) = {integrand.kappa_up.real:.6g} must be positive"
        )

    min_gap = contour['min_gap']
    left = [x.real for x in integrand.left_starts]
    right = [x.real for x in integrand.right_starts]
    if crossed is None:
        crossed = ()
        if allow_residues:
            crossed = tuple(k for k in range(3) if right[k] < max(left) + min_gap)
    crossed = tuple(sorted(crossed))

    lower = max(left + [right[k] for k in crossed])
    upper = min(
        [right[k] for k in range(3) if k not in crossed]
        + [right[k] + coupling.b_min for k in crossed]
    )
    gap = upper - lower
    if gap < min_gap:
        raise ContourCollisionError(
            f"left and right pole lattices are {gap:.3g} apart (min_gap {min_gap:g}), "
            f"left starts {left}, right starts {right}, crossed {crossed}"
        )
    if abscissa is None:
        abscissa = (lower + upper) / 2.0
    elif not lower < abscissa < upper:
        raise ContourCollisionError(f"abscissa {abscissa:g} is outside the gap ({lower:g}, {upper:g})")

    scale = min(1.0, max(0.05, min(abscissa - lower, upper - abscissa)))
    height = _tail_height(integrand, abscissa, scale, tolerance)
    spec = ContourSpec(
        abscissa=float(abscissa),
        step=contour['panel_length'],
        height=height,
        left_starts=integrand.left_starts,
        right_starts=integrand.right_starts,
        gap=float(gap),
        scale=scale,
        crossed=crossed,
    )
    logger.debug("contour plan %s", spec)
    return spec


def _log_line_integral(integrand, spec, tolerance, max_doublings):
    u_max = math.asinh(spec.height / spec.scale)
    n_panels = max(2, int(math.ceil(2.0 * u_max / spec.step)))
    nodes, weights = _legendre(NODES_PER_PANEL)

    previous = None
    for doubling in range(max_doublings + 1):
        edges = np.linspace(-u_max, u_max, n_panels + 1)
        half = 0.5 * np.diff(edges)
        u = ((0.5 * (edges[:-1] + edges[1:]))[:, None] + half[:, None] * nodes[None, :]).ravel()
        w = (half[:, None] * weights[None, :]).ravel()
        y = spec.scale * np.sinh(u)
        jacobian = spec.scale * np.cosh(u)
        logs = integrand.log_values(spec.abscissa + 1j * y) + np.log(jacobian * w)
        current = _log_sum(logs)
        if previous is not None:
            change = abs(np.expm1(current - previous))
            logger.debug("contour pass %d, %d panels, relative change %.3g", doubling, n_panels, change)
            if change <= tolerance:
                return complex(current)
        previous = current
        n_panels *= 2
    raise QuadratureError(
        f"contour quadrature did not settle to {tolerance:g} after {max_doublings} doublings"
    )


def contour_J_log(betas, sigmas, coupling, spec=None, tolerance=None, allow_residues=False, crossed=None):
    """ln 𝓙, the branch of the imaginary part is arbitrary."""
    contour = contour_options()
    if tolerance is None:
        tolerance = contour['tolerance']
    if spec is None:
        spec = plan_contour(
            betas, sigmas, coupling,
            allow_residues=allow_residues, crossed=crossed, tolerance=tolerance,
        )
    integrand = BarnesIntegrand(betas, sigmas, coupling)
    if integrand.kappa_up.real <= 0:
        raise ConvergenceError(
            f"Re(Q - sigma3 + sigma2 - beta2/2) = {integrand.kappa_up.real:.6g} must be positive"
        )

    terms = [_log_line_integral(integrand, spec, tolerance, contour['max_doublings'])]
    for k in spec.crossed:
        terms.append(integrand.log_residue_term(k, spec.right_starts[k]))
    if len(terms) == 1:
        return terms[0]
    return complex(_log_sum(terms))


def contour_J(betas, sigmas, coupling, spec=None, tolerance=None, allow_residues=False, crossed=None):
    return complex(np.exp(contour_J_log(
        betas, sigmas, coupling, spec=spec, tolerance=tolerance,
        allow_residues=allow_residues, crossed=crossed,
    )))
