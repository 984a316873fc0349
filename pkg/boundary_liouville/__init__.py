from .celery import app as celery_app

# load celery with django so shared tasks bind to this app
__all__ = ('celery_app',)
