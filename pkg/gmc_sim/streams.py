import logging

import numpy as np
from django.conf import settings

from boundary_liouville.dispatch import fan_out
from gmc_sim.tasks import sample_stream_task

logger = logging.getLogger(__name__)


def split_counts(n_samples, n_streams):
    base, extra = divmod(n_samples, n_streams)
    return [base + (k < extra) for k in range(n_streams)]


def run_streams(kernel, params, n_samples, seed, worker_count=None):
    """Samples from ``worker_count`` independent streams, concatenated in stream order.

    The stream layout depends only on the requested worker count; how many threads
    or celery workers actually run them does not change the result.
    """
    n_streams = max(1, int(worker_count or settings.BCFT_THREADS))
    counts = split_counts(n_samples, n_streams)
    arguments = [(kernel, params, seed, index, count) for index, count in enumerate(counts) if count]
    logger.debug("%s: %d samples over %d streams", kernel, n_samples, len(arguments))
    results = fan_out(sample_stream_task, arguments, n_streams)
    return np.concatenate([np.asarray(result, dtype=float) for result in results])
