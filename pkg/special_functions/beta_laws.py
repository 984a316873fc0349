"""Moments of the β_{2,2} and β_{1,0} laws that appear in the exact GMC laws."""
import math

from scipy.special import gammaln

from boundary_liouville.exceptions import DomainError, PoleError
from special_functions.coupling import LiouvilleCoupling
from special_functions.double_gamma import log_double_gamma_extended


def beta22_log_moment(p, a1, a2, b0, b1, b2):
    """ln E[β_{2,2}(1, 4/γ²; b0, b1, b2)^p] as a ratio of eight double gammas.

    Only a1 = 1 occurs, and a2 = 4/γ² fixes the coupling.
    """
    if not math.isclose(a1, 1.0):
        raise DomainError(f"beta22 moments are implemented for a1 = 1 only, got {a1}")
    if a2 <= 1.0:
        raise DomainError(f"a2 = 4/gamma^2 must exceed 1, got {a2}")
    coupling = LiouvilleCoupling(2.0 / math.sqrt(a2))
    if p == 0:
        return 0.0

    b = coupling.b
    numerator = (p + b0, b0 + b1, b0 + b2, p + b0 + b1 + b2)
    denominator = (b0, p + b0 + b1, p + b0 + b2, b0 + b1 + b2)
    try:
        total = sum(log_double_gamma_extended(b * s, coupling) for s in numerator)
        total -= sum(log_double_gamma_extended(b * s, coupling) for s in denominator)
    except PoleError as error:
        raise DomainError(f"beta22 moment p={p} hits a double gamma pole: {error}") from error

    # the eight factors are real, a negative product means the moment does not exist
    if math.cos(total.imag) <= 0:
        raise DomainError(f"beta22 moment p={p} is not positive for b=({b0}, {b1}, {b2})")
    return float(total.real)


def beta10_log_moment(q, a, b):
    """(q/a) ln a + ln Γ((q+b)/a) - ln Γ(b/a)."""
    if a <= 0 or (q + b) / a <= 0 or b / a <= 0:
        raise DomainError(f"beta10 moment needs (q+b)/a > 0 and b/a > 0, got q={q}, a={a}, b={b}")
    return float((q / a) * math.log(a) + gammaln((q + b) / a) - gammaln(b / a))
