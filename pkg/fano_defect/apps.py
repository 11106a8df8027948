"""
fano_defect Django application initialization.
"""

from django.apps import AppConfig


class FanoDefectConfig(AppConfig):
    """
    Configuration for the fano_defect Django application.
    """

    name = 'fano_defect'
    verbose_name = 'Fano defect'

    def ready(self) -> None:
        """Fill in FANO_DEFECT_SETTINGS defaults."""
        from django.conf import settings  # pylint: disable=import-outside-toplevel

        from .settings.common import plugin_settings  # pylint: disable=import-outside-toplevel

        plugin_settings(settings)
