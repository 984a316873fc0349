import cmath

import numpy as np
from scipy.special import loggamma

from boundary_liouville.exceptions import PoleError
from special_functions.lattice import current_pole_tolerance, gamma_pole_distance

LOG_SQRT_TWO_PI = 0.5 * np.log(2.0 * np.pi)


def complex_log_gamma(z, factor=None):
    """Principal branch of log Γ(z), imaginary part continuous off the negative axis.

    Raises PoleError within the pole tolerance of a non-positive integer.
    """
    z = complex(z)
    distance, nearest = gamma_pole_distance(z)
    if distance < current_pole_tolerance():
        raise PoleError(
            f"gamma function pole at {nearest} (argument {z:.6g})",
            factor=factor or f"Gamma({z:.6g})",
        )
    return complex(loggamma(z))


def complex_gamma(z, factor=None):
    return cmath.exp(complex_log_gamma(z, factor))


def principal_log(value):
    """log with argument in (-π, π]."""
    value = complex(value)
    if value == 0:
        raise PoleError("logarithm of zero", factor='log')
    return cmath.log(value)
