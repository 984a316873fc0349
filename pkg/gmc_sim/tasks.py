# shared_task for celery tasks
from celery import shared_task

from gmc_sim.kernels import KERNELS
from gmc_sim.rng import stream


# celery task that draws one seeded stream of chaos masses
@shared_task
def sample_stream_task(kernel, params, seed, index, count):
    # lists go back through the json result backend
    return KERNELS[kernel](params, stream(seed, index), count).tolist()
