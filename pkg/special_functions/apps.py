from django.apps import AppConfig


class SpecialFunctionsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'special_functions'
    verbose_name = 'special functions'
