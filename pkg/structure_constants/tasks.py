# shared_task for celery tasks
from celery import shared_task

from structure_constants.identities import evaluate_point


# celery task that checks one grid point of a verification suite
@shared_task
def evaluate_point_task(identity, gamma, params, index, pole_distance=None, contour=None):
    return evaluate_point(identity, gamma, params, index, pole_distance, contour)
