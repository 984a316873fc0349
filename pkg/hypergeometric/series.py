import logging
from dataclasses import dataclass

from django.conf import settings

from boundary_liouville.exceptions import ConvergenceError, DegenerateError, DomainError

logger = logging.getLogger(__name__)

MAX_TERMS = 20000


def near_integer(value, tolerance=1e-8):
    value = complex(value)
    return abs(value.imag) < tolerance and abs(value.real - round(value.real)) < tolerance


@dataclass(frozen=True)
class HypergeometricParams:
    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        for name in ('a', 'b', 'c'):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if near_integer(self.c) and self.c.real < 0.5:
            raise DegenerateError(f"C = {self.c} is a non-positive integer")


def _series(params, t, tolerance, max_terms):
    t = complex(t)
    if abs(t) >= 1.0:
        raise DomainError(f"2F1 series needs |t| < 1, got {t}")
    a, b, c = params.a, params.b, params.c
    term = 1.0 + 0j
    total = 1.0 + 0j
    quiet = 0
    # past this index the term ratio decreases towards |t|
    settled = max(abs(a), abs(b), abs(c)) + 1
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * t
        total += term
        if term == 0:
            return total, n + 1
        # two small terms in a row
        if abs(term) < tolerance * abs(total) and n >= settled:
            quiet += 1
            if quiet == 2:
                return total, n + 1
        else:
            quiet = 0
    raise ConvergenceError(f"2F1 series at t={t} did not settle within {max_terms} terms")


def gauss_2f1(params, t, tolerance=None, max_terms=MAX_TERMS):
    """F(A, B, C, t) by its power series, |t| < 1."""
    if tolerance is None:
        tolerance = settings.BCFT_TOLERANCES['series'] * 1e-2
    value, terms = _series(params, t, tolerance, max_terms)
    logger.debug("2F1%s at t=%s used %d terms", (params.a, params.b, params.c), t, terms)
    return value


def series_length(params, t, tolerance=None, max_terms=MAX_TERMS):
    if tolerance is None:
        tolerance = settings.BCFT_TOLERANCES['series'] * 1e-2
    return _series(params, t, tolerance, max_terms)[1]
