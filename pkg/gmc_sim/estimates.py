import math

import numpy as np
from django.conf import settings
from pydantic import BaseModel, Field

from boundary_liouville.exceptions import ConvergenceError, DomainError


class MCEstimate(BaseModel):
    # moments and survival fractions of positive masses are real
    mean: float
    stderr: float = Field(ge=0)
    n_samples: int = Field(ge=1)
    seed: int

    @classmethod
    def from_values(cls, values, seed):
        values = np.asarray(values, dtype=float)
        n = len(values)
        stderr = float(np.std(values, ddof=1)) / math.sqrt(n) if n > 1 else 0.0
        return cls(mean=float(np.mean(values)), stderr=stderr, n_samples=n, seed=seed)


def compare(estimate, exact):
    """z-score |mean - exact| / stderr."""
    distance = abs(estimate.mean - complex(exact))
    if estimate.stderr <= 0:
        if distance == 0:
            return 0.0
        raise DomainError("a z-score needs a positive standard error")
    return distance / estimate.stderr


def richardson(coarse, fine, ratio=2.0, order=1.0):
    """Remove a bias ∝ h^order from two estimates at resolutions h and h/ratio."""
    factor = ratio ** order
    return MCEstimate(
        mean=(factor * fine.mean - coarse.mean) / (factor - 1.0),
        stderr=math.hypot(factor * fine.stderr, coarse.stderr) / (factor - 1.0),
        n_samples=coarse.n_samples + fine.n_samples,
        seed=fine.seed,
    )


def fit_tail_slope(rows, min_exceedances=None, full=False):
    """Log-log slope of the survival function over its largest well-populated decade.

    ``rows`` are (u, estimate of P(I > u)) pairs; a point counts when at least
    ``min_exceedances`` samples lie above it. With ``full`` the standard error of
    the slope and the number of fitted thresholds come back too.
    """
    if min_exceedances is None:
        min_exceedances = settings.BCFT_MC['tail_min_exceedances']
    eligible = [
        (u, estimate.mean) for u, estimate in rows
        if u > 0 and round(estimate.mean * estimate.n_samples) >= min_exceedances
    ]
    if not eligible:
        raise ConvergenceError(f"no threshold has {min_exceedances} exceedances")
    top = max(u for u, _ in eligible)
    window = [(u, p) for u, p in eligible if u >= top / 10.0]
    if len(window) < 4:
        raise ConvergenceError(f"only {len(window)} thresholds in the decade below u={top:g}")
    u, p = np.array(window).T
    coefficients, covariance = np.polyfit(np.log(u), np.log(p), 1, cov=True)
    slope = float(coefficients[0])
    if full:
        return slope, math.sqrt(max(float(covariance[0, 0]), 0.0)), len(window)
    return slope
