import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'boundary_liouville.settings')
django.setup()
