"""Pole lattices of Γ and of the double gamma function.

The double gamma function has simple poles on -nγ/2 - m·2/γ (n, m >= 0) and the
double sine has its zeros on the mirrored lattice Q + nγ/2 + m·2/γ. Every
evaluator checks its argument against these lattices before doing any work.
"""
import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass

from django.conf import settings

# overrides the configured pole tolerance for the current context (grid screening)
_pole_tolerance = ContextVar('pole_tolerance', default=None)


def current_pole_tolerance():
    value = _pole_tolerance.get()
    if value is None:
        return settings.BCFT_SPECIAL['pole_tolerance']
    return value


@contextmanager
def pole_guard(tolerance):
    """Treat anything within ``tolerance`` of a lattice point as a pole."""
    token = _pole_tolerance.set(tolerance)
    try:
        yield
    finally:
        _pole_tolerance.reset(token)


@dataclass(frozen=True)
class PoleReport:
    is_pole: bool
    nearest_pole: complex
    distance: float
    lattice_indices: tuple

    def describe(self):
        n, m = self.lattice_indices
        return (
            f"{self.nearest_pole.real:.6g}{self.nearest_pole.imag:+.6g}j "
            f"(n={n}, m={m}, distance={self.distance:.3g})"
        )


def pole_report(x, coupling, tolerance=None):
    """Nearest point of -nγ/2 - m·2/γ to ``x``."""
    x = complex(x)
    if tolerance is None:
        tolerance = current_pole_tolerance()
    b, big_b = coupling.b, coupling.big_b
    depth = max(0.0, -x.real)

    best = None
    for n in range(int(depth / b) + 2):
        rest = max(0.0, (depth - n * b) / big_b)
        for m in {math.floor(rest), math.ceil(rest)}:
            point = -n * b - m * big_b
            distance = abs(x - point)
            # ties keep the smaller index pair
            if best is None or distance < best[0] - 1e-15:
                best = (distance, n, m, point)

    distance, n, m, point = best
    return PoleReport(
        is_pole=distance < tolerance,
        nearest_pole=complex(point),
        distance=float(distance),
        lattice_indices=(n, m),
    )


def zero_report(x, coupling, tolerance=None):
    """Same report for the zero lattice Q + nγ/2 + m·2/γ of the double sine."""
    return pole_report(coupling.q_charge - complex(x), coupling, tolerance)


def gamma_pole_distance(z):
    """Distance from ``z`` to the nearest pole of Γ, plus that pole."""
    z = complex(z)
    nearest = min(0, round(z.real))
    return abs(z - nearest), nearest
