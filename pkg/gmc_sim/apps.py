from django.apps import AppConfig


class GmcSimConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'gmc_sim'
    verbose_name = 'GMC simulation'
