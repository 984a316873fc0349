"""Log-correlated Gaussian fields on the unit circle and on a real interval."""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from django.conf import settings

from boundary_liouville.exceptions import DomainError, FactorizationError
from special_functions.coupling import LiouvilleCoupling

logger = logging.getLogger(__name__)

# mean of -2 ln|x - y| over a cell of width Δ, minus -2 ln Δ
CELL_SELF_COVARIANCE = 3.0


@dataclass(frozen=True)
class CircleFieldConfig:
    n_modes: int
    # uniform θ-grid
    n_grid: int
    gamma: float

    def __post_init__(self):
        if self.n_modes < 1:
            raise DomainError(f"n_modes={self.n_modes} must be at least 1")
        if self.n_grid < 8:
            raise DomainError(f"n_grid={self.n_grid} must be at least 8")
        LiouvilleCoupling(self.gamma)

    @classmethod
    def for_modes(cls, n_modes, gamma):
        return cls(n_modes, max(8, settings.BCFT_MC['circle_oversample'] * n_modes), gamma)

    @property
    def variance(self):
        """Pointwise variance of the truncated field, 2 Σ_{n ≤ N} 1/n."""
        return 2.0 * float(np.sum(1.0 / np.arange(1, self.n_modes + 1)))

    @property
    def angles(self):
        return 2.0 * math.pi * np.arange(self.n_grid) / self.n_grid


def sample_circle_field(config, rng, count=1):
    """``count`` draws of X(θ) = Σ √(2/n)(a_n cos nθ + b_n sin nθ) on the θ-grid.

    Modes above the grid's Nyquist index fold onto their aliases, so the values at
    the grid points are exact for any n_modes.
    """
    modes = np.arange(1, config.n_modes + 1)
    a = rng.standard_normal((count, config.n_modes))
    b = rng.standard_normal((count, config.n_modes))
    coefficients = np.zeros((count, config.n_grid), dtype=complex)
    values = np.sqrt(2.0 / modes) * (a - 1j * b)
    if config.n_modes < config.n_grid:
        coefficients[:, modes] = values
    else:
        np.add.at(coefficients, (slice(None), modes % config.n_grid), values)
    return config.n_grid * np.fft.ifft(coefficients, axis=1).real


@dataclass(frozen=True)
class IntervalFieldConfig:
    n_grid: int
    mollification: float
    gamma: float
    start: float = 0.0
    length: float = 1.0

    def __post_init__(self):
        if self.n_grid < 2:
            raise DomainError(f"n_grid={self.n_grid} must be at least 2")
        if self.mollification <= 0:
            raise DomainError(f"mollification={self.mollification} must be positive")
        if not 0.0 < self.length <= 1.0:
            # the log kernel is only positive definite on sets of diameter below 1
            raise DomainError(f"interval length {self.length} outside (0, 1]")
        LiouvilleCoupling(self.gamma)
        covariance_factor(self.n_grid, self.mollification, self.start, self.length)

    @classmethod
    def on_grid(cls, n_grid, gamma, start=0.0, length=1.0):
        """Mollification at the grid spacing."""
        return cls(n_grid, length / n_grid, gamma, start, length)

    @property
    def spacing(self):
        return self.length / self.n_grid

    @property
    def nodes(self):
        return self.start + self.spacing * (np.arange(self.n_grid) + 0.5)

    @property
    def variance(self):
        return -2.0 * math.log(self.mollification) + CELL_SELF_COVARIANCE


def interval_covariance(n_grid, mollification, start=0.0, length=1.0):
    """C_ij = -2 ln max(|x_i - x_j|, mollification) at the cell midpoints.

    The diagonal is replaced by the cell average -2 ln(mollification) + 3; the bare
    mollified diagonal leaves the matrix indefinite at the grid frequency.
    """
    nodes = start + (length / n_grid) * (np.arange(n_grid) + 0.5)
    distance = np.abs(nodes[:, None] - nodes[None, :])
    covariance = -2.0 * np.log(np.maximum(distance, mollification))
    np.fill_diagonal(covariance, -2.0 * math.log(mollification) + CELL_SELF_COVARIANCE)
    return covariance


@lru_cache(maxsize=16)
def covariance_factor(n_grid, mollification, start=0.0, length=1.0):
    """Lower Cholesky factor of the mollified covariance, with a jitter fallback."""
    covariance = interval_covariance(n_grid, mollification, start, length)
    scale = float(np.mean(np.diag(covariance)))
    for jitter in (0.0, 1e-12, 1e-10, 1e-8):
        try:
            factor = np.linalg.cholesky(covariance + jitter * scale * np.eye(n_grid))
        except np.linalg.LinAlgError:
            logger.debug("cholesky failed at jitter %g for %d cells", jitter, n_grid)
            continue
        if jitter:
            logger.warning("covariance of %d cells factorized with jitter %g", n_grid, jitter)
        factor.flags.writeable = False
        return factor
    raise FactorizationError(
        f"covariance of {n_grid} cells at mollification {mollification:g} is not positive definite"
    )


def sample_interval_field(config, rng, count=1):
    factor = covariance_factor(config.n_grid, config.mollification, config.start, config.length)
    return rng.standard_normal((count, config.n_grid)) @ factor.T


def batch_rows(n_cells):
    return max(1, settings.BCFT_MC['batch_cells'] // n_cells)
