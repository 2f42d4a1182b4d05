"""
Celery configuration for netbroker.

Replications of a scenario are independent and can be fanned out to workers
as scenarios.tasks.run_replication. Results are stored in
django-celery-results (database).
"""

import os
from celery import Celery

# Set Django settings module before importing anything else
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')

app = Celery('netbroker')

# Load config from Django settings with CELERY_ prefix
app.config_from_object('django.conf:settings', namespace='CELERY')

# Auto-discover tasks in all INSTALLED_APPS
app.autodiscover_tasks()
