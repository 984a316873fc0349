"""
Django settings for the boundary_liouville project.

The project has no web surface; Django provides configuration, logging,
management commands and the Celery integration.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path
import dj_database_url
from dotenv import load_dotenv
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# only used by django internals, nothing here is served
SECRET_KEY = os.environ.get('SECRET_KEY', 'bcft-local-only')

DEBUG = os.environ.get('DEBUG', '') == '1'

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    # added non-default apps
    'django_celery_results',
    'special_functions',
    'hypergeometric',
    'structure_constants',
    'gmc_sim',
    'cli',
]

# Database
# only the celery result backend writes here when a broker is configured
DATABASE_URL = os.environ.get('DATABASE_URL')

# Fallback to sqlite if/else statement
if DATABASE_URL:
    DATABASES = {
        'default': dj_database_url.config(
            default=DATABASE_URL,
            conn_max_age=600,
            conn_health_checks=True,
        )
    }

else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }

# Celery/Redis configuration
# without a broker every task runs in-process
REDIS_URL = os.environ.get('REDIS_URL')
CELERY_BROKER_URL = REDIS_URL
CELERY_TASK_ALWAYS_EAGER = not REDIS_URL
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_RESULT_BACKEND = 'django-db'

# worker cap for sampling streams and verification grids
BCFT_THREADS = int(os.environ.get('BCFT_THREADS', os.cpu_count() or 1))

# default toml config file, flags still win over it
BCFT_CONFIG = os.environ.get('BCFT_CONFIG', '')

# special function evaluation
BCFT_SPECIAL = {
    'pole_tolerance': 1e-8,
    'asymptotic_threshold': 30.0,
    'quad_tolerance': 1e-13,
    't_cut': 1e-2,
    'strip_low': 0.3,
    # strip_high is Q + strip_margin
    'strip_margin': 0.3,
    'quad_limit': 500,
}

# barnes contour placement and quadrature
BCFT_CONTOUR = {
    'min_gap': 0.05,
    'panel_length': 0.5,
    'max_doublings': 6,
    'tolerance': 1e-11,
    'collision_offset': 1e-3,
}

# per-suite tolerances for verify, plus the hypergeometric targets
BCFT_TOLERANCES = {
    'shift_G_gamma': 1e-7,
    'shift_G_dual': 1e-7,
    'reflect_G': 1e-7,
    'shift_R_gamma': 1e-7,
    'shift_R_dual': 1e-7,
    'reflect_R': 1e-8,
    'shift_H_1': 1e-5,
    'shift_H_2': 1e-5,
    'shift_H_1_dual': 1e-5,
    'shift_H_2_dual': 1e-5,
    'reflect_H': 1e-5,
    'scale_H': 1e-5,
    'limit_H_to_R': 1e-3,
    'special_values': 1e-5,
    'cyclic_H': 1e-5,
    'interval_reduction': 1e-8,
    'series': 1e-12,
    'degenerate': 1e-8,
    'mc_z': 3.0,
}

# monte carlo budget and ceilings
BCFT_MC = {
    'n_samples': 100000,
    'n_modes': 1024,
    'n_grid': 512,
    'seed': 20240101,
    # circle grid points per fourier mode
    'circle_oversample': 4,
    # doubles held per sampling batch
    'batch_cells': 1 << 20,
    'refinement_ratio': 2,
    'richardson_order': 1.0,
    'tail_u_min': 0.1,
    'tail_u_max': 1e4,
    'tail_u_points': 41,
    'tail_min_exceedances': 50,
    'tail_slope_tolerance': 0.1,
    'max_samples': 2000000,
    'max_modes': 1 << 14,
    'max_grid': 4096,
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.environ.get('BCFT_LOG_LEVEL', 'INFO'),
    },
    'loggers': {
        # celery is chatty at INFO when tasks run eagerly
        'celery': {
            'level': 'WARNING',
        },
    },
}

# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
