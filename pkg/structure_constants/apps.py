from django.apps import AppConfig


class StructureConstantsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'structure_constants'
    verbose_name = 'structure constants'
