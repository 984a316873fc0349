"""Run a functional-equation suite over a quasi-random grid and summarize it."""
import logging
import math
from typing import Optional, Union

import numpy as np
from django.conf import settings
from pydantic import BaseModel, ConfigDict, Field
from scipy.stats import qmc

from boundary_liouville.dispatch import fan_out
from boundary_liouville.exceptions import DomainError, GridError
from special_functions.coupling import LiouvilleCoupling
from structure_constants.identities import IDENTITIES
from structure_constants.tasks import evaluate_point_task

logger = logging.getLogger(__name__)


class GridSpec(BaseModel):
    gammas: list[float] = Field(default_factory=lambda: [0.9, 1.3])
    n_points: int = Field(20, ge=1)
    # defaults to n_points
    min_points: Optional[int] = Field(None, ge=1)
    seed: int = 20240101
    pole_distance: float = Field(1e-3, gt=0)
    # candidates drawn per requested point
    oversample: int = Field(8, ge=1)
    # BCFT_CONTOUR overrides sent with every grid point
    contour: dict[str, Union[int, float]] = Field(default_factory=dict)

    @property
    def required(self):
        return self.n_points if self.min_points is None else self.min_points


class VerificationReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    identity: str
    n_points: int
    max_residual: float
    tol: float
    passed: bool = Field(alias='pass')
    rejected: int = 0
    gammas: list[float] = Field(default_factory=list)

    def json_line(self):
        return self.model_dump_json(by_alias=True)


def sobol_points(dimension, count, seed, stream):
    """Scrambled Sobol points, at least ``count`` of them (a power of two)."""
    sampler = qmc.Sobol(d=dimension, scramble=True, seed=np.random.default_rng([seed, stream]))
    return sampler.random_base2(max(1, math.ceil(math.log2(count))))


def _grid_results(name, gamma, stream, grid, worker_count):
    entry = IDENTITIES[name]
    coupling = LiouvilleCoupling(gamma)
    if entry.fixed_points is not None:
        arguments = [
            (name, gamma, params, index, None, grid.contour)
            for index, params in enumerate(entry.fixed_points(coupling))
        ]
        return fan_out(evaluate_point_task, arguments, worker_count), 0

    points = sobol_points(entry.dimension, grid.n_points * grid.oversample, grid.seed, stream)
    admitted, rejected, cursor = [], 0, 0
    while len(admitted) < grid.n_points and cursor < len(points):
        batch = range(cursor, min(cursor + grid.n_points - len(admitted), len(points)))
        arguments = [
            (name, gamma, entry.draw([float(u) for u in points[index]], coupling), index, grid.pole_distance,
             grid.contour)
            for index in batch
        ]
        for result in sorted(fan_out(evaluate_point_task, arguments, worker_count), key=lambda r: r['index']):
            if result['status'] == 'ok':
                admitted.append(result)
            else:
                rejected += 1
        cursor = batch.stop

    if len(admitted) < grid.required:
        raise GridError(
            f"{name} at gamma={gamma:g}: only {len(admitted)} of {cursor} candidate points are admissible, "
            f"{grid.required} required"
        )
    return admitted, rejected


def verify_identity(name, grid=None, tol=None, worker_count=None):
    if name not in IDENTITIES:
        raise DomainError(f"unknown identity {name!r}, expected one of {sorted(IDENTITIES)}")
    grid = grid or GridSpec()
    if tol is None:
        tol = settings.BCFT_TOLERANCES[name]

    residuals, rejected = [], 0
    for stream, gamma in enumerate(grid.gammas):
        results, dropped = _grid_results(name, gamma, stream, grid, worker_count)
        rejected += dropped
        residuals += [result['residual'] for result in results]
        logger.debug("%s at gamma=%g: %d points, %d rejected", name, gamma, len(results), dropped)

    worst = max(residuals)
    report = VerificationReport(
        identity=name,
        n_points=len(residuals),
        max_residual=worst,
        tol=tol,
        passed=worst < tol,
        rejected=rejected,
        gammas=list(grid.gammas),
    )
    logger.info("%s: max residual %.3g over %d points (tol %g) %s",
                name, worst, len(residuals), tol, 'pass' if report.passed else 'FAIL')
    return report
