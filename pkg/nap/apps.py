from django.apps import AppConfig


class NapConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'nap'
    verbose_name = 'Network Attachment Points'
