"""Connection matrices between the local solution bases of the hypergeometric equation.

Bases, for parameters (A, B, C):

    t = 0:  C1 = F(A, B, C, t),        C2 = t^{1-C} F(1+A-C, 1+B-C, 2-C, t)
    t = 1:  B1 = F(A, B, 1+A+B-C, 1-t), B2 = (1-t)^{C-A-B} F(C-A, C-B, 1+C-A-B, 1-t)
    t = ∞:  D1 = (-t)^{-A} F(A, 1+A-C, 1+A-B, 1/t)
            D2 = (-t)^{-B} F(B, 1+B-C, 1+B-A, 1/t)

A matrix maps coefficient vectors: a solution x1·C1 + x2·C2 equals y1·B1 + y2·B2
with y = N x. Column j of a matrix is therefore the expansion of the j-th source
basis function in the target basis. Next to ∞ the t = 0 basis uses (-t)^{1-C}
in place of t^{1-C}.
"""
import cmath
from dataclasses import dataclass

from boundary_liouville.exceptions import DegenerateError
from hypergeometric.series import HypergeometricParams, gauss_2f1, near_integer
from special_functions.gamma import complex_gamma, complex_log_gamma


@dataclass(frozen=True)
class ConnectionMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @property
    def determinant(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def map_coefficients(self, x1, x2):
        return (self.m11 * x1 + self.m12 * x2, self.m21 * x1 + self.m22 * x2)

    def expand(self, target1, target2):
        """Source basis values rebuilt from the target basis values."""
        return (
            self.m11 * target1 + self.m21 * target2,
            self.m12 * target1 + self.m22 * target2,
        )

    def __matmul__(self, other):
        return ConnectionMatrix(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )


def _ratio(numerator, denominator):
    # Γ products in log space, 1/Γ at a pole is an exact zero
    for z in denominator:
        if near_integer(z) and complex(z).real < 0.5:
            return 0j
    return cmath.exp(
        sum(complex_log_gamma(z) for z in numerator)
        - sum(complex_log_gamma(z) for z in denominator)
    )


def connection_0_to_1(params):
    a, b, c = params.a, params.b, params.c
    if near_integer(c) or near_integer(c - a - b):
        raise DegenerateError(f"C={c} or C-A-B={c - a - b} is an integer")
    return ConnectionMatrix(
        _ratio((c, c - a - b), (c - a, c - b)),
        _ratio((2 - c, c - a - b), (1 - a, 1 - b)),
        _ratio((c, a + b - c), (a, b)),
        _ratio((2 - c, a + b - c), (a - c + 1, b - c + 1)),
    )


def connection_inf_to_0(params):
    a, b, c = params.a, params.b, params.c
    if near_integer(a - b) or near_integer(c):
        raise DegenerateError(f"A-B={a - b} or C={c} is an integer")
    return ConnectionMatrix(
        _ratio((1 - c, a - b + 1), (a - c + 1, 1 - b)),
        _ratio((1 - c, b - a + 1), (b - c + 1, 1 - a)),
        _ratio((c - 1, a - b + 1), (a, c - b)),
        _ratio((c - 1, b - a + 1), (b, c - a)),
    )


def connection_inf_to_1(params, upper_half=True):
    """∞ basis to t = 1 basis through t = 0, for t in the upper or lower half plane."""
    # (-t)^{1-C} = e^{∓iπ(1-C)} t^{1-C} off the real axis
    phase = cmath.exp((-1j if upper_half else 1j) * cmath.pi * (1 - params.c))
    branch = ConnectionMatrix(1.0, 0j, 0j, phase)
    return connection_0_to_1(params) @ branch @ connection_inf_to_0(params)


def basis_at_zero(params, t, minus_t=False):
    a, b, c = params.a, params.b, params.c
    t = complex(t)
    power = (-t) ** (1 - c) if minus_t else t ** (1 - c)
    return (
        gauss_2f1(params, t),
        power * gauss_2f1(HypergeometricParams(1 + a - c, 1 + b - c, 2 - c), t),
    )


def basis_at_one(params, t):
    a, b, c = params.a, params.b, params.c
    s = 1 - complex(t)
    return (
        gauss_2f1(HypergeometricParams(a, b, 1 + a + b - c), s),
        s ** (c - a - b) * gauss_2f1(HypergeometricParams(c - a, c - b, 1 + c - a - b), s),
    )


def basis_at_infinity(params, t):
    a, b, c = params.a, params.b, params.c
    t = complex(t)
    return (
        (-t) ** (-a) * gauss_2f1(HypergeometricParams(a, 1 + a - c, 1 + a - b), 1 / t),
        (-t) ** (-b) * gauss_2f1(HypergeometricParams(b, 1 + b - c, 1 + b - a), 1 / t),
    )


def value_at_one(params):
    """F(A, B, C, 1) = Γ(C)Γ(C-A-B) / (Γ(C-A)Γ(C-B)) for Re(C-A-B) > 0."""
    a, b, c = params.a, params.b, params.c
    return complex_gamma(c) * complex_gamma(c - a - b) / (complex_gamma(c - a) * complex_gamma(c - b))
