from django.apps import AppConfig


class HypergeometricConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hypergeometric'
    verbose_name = 'hypergeometric functions'
