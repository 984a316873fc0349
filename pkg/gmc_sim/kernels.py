"""Per-sample chaos masses. Each kernel takes plain parameters (so it can travel
through a task queue), a numpy Generator and a sample count."""
import math

import numpy as np

from gmc_sim.fields import (
    CircleFieldConfig,
    IntervalFieldConfig,
    batch_rows,
    sample_circle_field,
    sample_interval_field,
)


def circle_weights(config, beta):
    """|e^{iθ} - 1|^{-γβ/2} on the θ-grid, the cell at θ = 0 averaged exactly."""
    power = config.gamma * beta / 2.0
    if power == 0:
        return np.ones(config.n_grid)
    angles = config.angles
    weights = np.empty(config.n_grid)
    weights[1:] = (2.0 * np.abs(np.sin(angles[1:] / 2.0))) ** -power
    half_cell = math.pi / config.n_grid
    weights[0] = half_cell ** -power / (1.0 - power)
    return weights


def interval_weights(config, a, b):
    """x^a (1-x)^b at the midpoints, the two end cells averaged exactly."""
    x, h = config.nodes, config.spacing
    weights = x ** a * (1.0 - x) ** b
    weights[0] = h ** a / (a + 1.0) * (1.0 - x[0]) ** b
    weights[-1] = x[-1] ** a * h ** b / (b + 1.0)
    return weights


def insertion_weights(config, power, mu1, mu2):
    """μ1 |x|^{-power} left of 0 and μ2 |x|^{-power} right of it, on [-1/2, 1/2]."""
    x, h = config.nodes, config.spacing
    weights = np.where(x < 0, mu1, mu2) * np.abs(x) ** -power
    middle = config.n_grid // 2
    # the two cells touching the insertion
    cell = h ** -power / (1.0 - power)
    weights[middle - 1] = mu1 * cell
    weights[middle] = mu2 * cell
    return weights


def _masses(sample, config, weights, cell, rng, count):
    shift = config.gamma ** 2 * config.variance / 8.0
    out = np.empty(count)
    rows = batch_rows(len(weights))
    for start in range(0, count, rows):
        stop = min(count, start + rows)
        field = sample(config, rng, stop - start)
        out[start:stop] = cell * np.exp(config.gamma * field / 2.0 - shift) @ weights
    return out


def circle_masses(params, rng, count):
    config = CircleFieldConfig(params['n_modes'], params['n_grid'], params['gamma'])
    weights = circle_weights(config, params.get('beta', 0.0))
    return _masses(sample_circle_field, config, weights, 1.0 / config.n_grid, rng, count)


def interval_masses(params, rng, count):
    config = IntervalFieldConfig.on_grid(params['n_grid'], params['gamma'])
    weights = interval_weights(config, params.get('a', 0.0), params.get('b', 0.0))
    return _masses(sample_interval_field, config, weights, config.spacing, rng, count)


def tail_masses(params, rng, count):
    config = IntervalFieldConfig.on_grid(params['n_grid'], params['gamma'], start=-0.5)
    weights = insertion_weights(config, params['gamma'] * params['beta'] / 2.0, params['mu1'], params['mu2'])
    return _masses(sample_interval_field, config, weights, config.spacing, rng, count)


KERNELS = {
    'circle': circle_masses,
    'interval': interval_masses,
    'tail': tail_masses,
}
