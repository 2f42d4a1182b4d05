"""
pytest configuration for netbroker.

pytest-django creates the test database; this only makes sure the test
settings are the ones in use when a test module imports Django code.
"""

import os


def pytest_configure():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.test_settings")
