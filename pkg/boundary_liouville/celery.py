import os
from celery import Celery

# load module
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'boundary_liouville.settings')

# celery
app = Celery('boundary_liouville')

# celery settings, broker and backend come from settings.py
app.config_from_object('django.conf:settings', namespace='CELERY')

# auto finds tasks
app.autodiscover_tasks()
