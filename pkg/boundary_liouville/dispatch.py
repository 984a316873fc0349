import logging
from concurrent.futures import ThreadPoolExecutor
from contextvars import copy_context

from celery import group
from django.conf import settings

logger = logging.getLogger(__name__)


def worker_cap(worker_count=None):
    if worker_count is None:
        worker_count = settings.BCFT_THREADS
    return max(1, min(int(worker_count), settings.BCFT_THREADS))


def fan_out(task, arguments, worker_count=None):
    """Run ``task`` once per argument tuple, results in argument order.

    With a broker the calls go out as one celery group; without one they run on a
    local thread pool capped by BCFT_THREADS, each call inside a copy of the caller's context.
    """
    arguments = [tuple(args) for args in arguments]
    if not arguments:
        return []

    if not settings.CELERY_TASK_ALWAYS_EAGER:
        logger.debug("dispatching %d %s calls to the broker", len(arguments), task.name)
        return group(task.s(*args) for args in arguments).apply_async().get()

    workers = min(worker_cap(worker_count), len(arguments))
    logger.debug("running %d %s calls on %d threads", len(arguments), task.name, workers)
    if workers == 1:
        return [task(*args) for args in arguments]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(copy_context().run, task, *args) for args in arguments]
        return [future.result() for future in futures]
