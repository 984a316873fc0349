"""Monte Carlo moments and tails of the chaos mass."""
import logging
import math

import numpy as np
from django.conf import settings

from boundary_liouville.exceptions import DomainError
from gmc_sim.estimates import MCEstimate
from gmc_sim.fields import CircleFieldConfig, IntervalFieldConfig
from gmc_sim.streams import run_streams
from special_functions.coupling import LiouvilleCoupling
from structure_constants.interval import check_interval_range

logger = logging.getLogger(__name__)


def _budget(n_samples, seed):
    mc = settings.BCFT_MC
    n_samples = mc['n_samples'] if n_samples is None else int(n_samples)
    if n_samples < 2:
        raise DomainError(f"n_samples={n_samples}, a standard error needs at least 2")
    return n_samples, mc['seed'] if seed is None else int(seed)


def _matching(config, gamma):
    if config.gamma != gamma:
        raise DomainError(f"field config is for gamma={config.gamma}, asked for gamma={gamma}")
    return config


def _on_window(config, start, gamma):
    _matching(config, gamma)
    if config.start != start or config.length != 1.0:
        raise DomainError(f"field config covers [{config.start}, {config.start + config.length}]")
    if config.mollification != config.spacing:
        # the kernels rebuild the field from n_grid alone
        raise DomainError("sampling runs with the mollification at the grid spacing")
    return config


def moment_estimate(masses, p, seed):
    if np.any(masses <= 0):
        raise DomainError("sampled a non-positive mass")
    return MCEstimate.from_values(masses ** p, seed)


def check_circle_range(p, beta, coupling):
    g = coupling.gamma
    if g * beta / 2.0 >= 1.0:
        raise DomainError(f"insertion beta={beta} is not integrable on the grid, needs beta < {2.0 / g:.6g}")
    if p >= 4.0 / g ** 2:
        raise DomainError(f"moment p={p} needs p < 4/gamma^2 = {4.0 / g ** 2:.6g}")
    if beta > 0 and p >= (2.0 / g) * (coupling.q_charge - beta):
        raise DomainError(
            f"moment p={p} diverges at the insertion, needs p < {(2.0 / g) * (coupling.q_charge - beta):.6g}"
        )


def circle_moment_mc(gamma, p, beta_insertion=0.0, config=None, n_samples=None, seed=None, worker_count=None):
    """E[((1/2π)∫ |e^{iθ} - 1|^{-γβ/2} e^{γX/2 - γ²E[X²]/8} dθ)^p]."""
    coupling = LiouvilleCoupling(gamma)
    if config is None:
        config = CircleFieldConfig.for_modes(settings.BCFT_MC['n_modes'], gamma)
    _matching(config, gamma)
    n_samples, seed = _budget(n_samples, seed)
    check_circle_range(p, beta_insertion, coupling)
    if p == 0:
        return MCEstimate(mean=1.0, stderr=0.0, n_samples=n_samples, seed=seed)

    params = {'gamma': gamma, 'n_modes': config.n_modes, 'n_grid': config.n_grid, 'beta': beta_insertion}
    estimate = moment_estimate(run_streams('circle', params, n_samples, seed, worker_count), p, seed)
    logger.info("circle moment p=%g beta=%g at %d modes: %.6g +- %.2g",
                p, beta_insertion, config.n_modes, estimate.mean, estimate.stderr)
    return estimate


def interval_moment_mc(gamma, p, a=0.0, b=0.0, config=None, n_samples=None, seed=None, worker_count=None):
    """E[(∫_0^1 x^a (1-x)^b e^{γX/2} dx)^p] from the mollified grid field."""
    coupling = LiouvilleCoupling(gamma)
    if config is None:
        config = IntervalFieldConfig.on_grid(settings.BCFT_MC['n_grid'], gamma)
    _on_window(config, 0.0, gamma)
    n_samples, seed = _budget(n_samples, seed)
    if a <= -1 or b <= -1:
        raise DomainError(f"weights a={a}, b={b} must exceed -1")
    check_interval_range(p, a, b, coupling)
    if p == 0:
        return MCEstimate(mean=1.0, stderr=0.0, n_samples=n_samples, seed=seed)

    params = {'gamma': gamma, 'n_grid': config.n_grid, 'a': a, 'b': b}
    estimate = moment_estimate(run_streams('interval', params, n_samples, seed, worker_count), p, seed)
    logger.info("interval moment p=%g a=%g b=%g on %d cells: %.6g +- %.2g",
                p, a, b, config.n_grid, estimate.mean, estimate.stderr)
    return estimate


def tail_probability_mc(gamma, beta, mu1, mu2, u_grid=None, config=None, n_samples=None, seed=None,
                        worker_count=None):
    """Survival function of I = μ1 ∫_{-1/2}^0 + μ2 ∫_0^{1/2} |x|^{-γβ/2} e^{γX/2} dx.

    Returns (u, estimate of P(I > u)) for every threshold of ``u_grid``.
    """
    coupling = LiouvilleCoupling(gamma)
    mc = settings.BCFT_MC
    if not gamma / 2.0 < beta < coupling.q_charge:
        raise DomainError(f"beta={beta} outside ({gamma / 2.0:.6g}, {coupling.q_charge:.6g})")
    if gamma * beta / 2.0 >= 1.0:
        raise DomainError(f"insertion beta={beta} is not integrable on the grid, needs beta < {2.0 / gamma:.6g}")
    if mu1 < 0 or mu2 < 0 or mu1 == mu2 == 0:
        raise DomainError(f"weights mu1={mu1}, mu2={mu2} must be non-negative and not both zero")
    if u_grid is None:
        u_grid = np.geomspace(mc['tail_u_min'], mc['tail_u_max'], mc['tail_u_points'])
    u_grid = [float(u) for u in u_grid]
    if any(later <= earlier for earlier, later in zip(u_grid, u_grid[1:])):
        raise DomainError("u_grid must be increasing")
    if config is None:
        config = IntervalFieldConfig.on_grid(mc['n_grid'], gamma, start=-0.5)
    _on_window(config, -0.5, gamma)
    if config.n_grid % 2:
        raise DomainError(f"n_grid={config.n_grid} must be even to put a cell edge at the insertion")
    n_samples, seed = _budget(n_samples, seed)

    params = {'gamma': gamma, 'n_grid': config.n_grid, 'beta': beta, 'mu1': mu1, 'mu2': mu2}
    masses = np.sort(run_streams('tail', params, n_samples, seed, worker_count))
    rows = []
    for u in u_grid:
        fraction = 1.0 - np.searchsorted(masses, u, side='right') / n_samples
        stderr = math.sqrt(fraction * (1.0 - fraction) / n_samples)
        rows.append((u, MCEstimate(mean=fraction, stderr=stderr, n_samples=n_samples, seed=seed)))
    logger.info("tail beta=%g mu=(%g, %g): P(I > %g) = %.3g", beta, mu1, mu2, u_grid[-1], rows[-1][1].mean)
    return rows
