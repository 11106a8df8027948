"""Shared behaviour of the fano_defect management commands."""
import logging
import os
from typing import Any

from django.core.management.base import BaseCommand, CommandError

logger = logging.getLogger(__name__)

EXIT_SELFCHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_VERIFICATION_FAILED = 3


class FanoDefectCommand(BaseCommand):
    """Base command: honours NO_COLOR and maps failures to the exit-code contract."""

    requires_system_checks: list = []

    def execute(self, *args: Any, **options: Any) -> Any:
        """Switch styling off when NO_COLOR is set."""
        if os.environ.get('NO_COLOR') and not options.get('force_color'):
            options['no_color'] = True
        return super().execute(*args, **options)

    def fail(self, message: str, returncode: int = EXIT_USAGE) -> CommandError:
        """Log and build the CommandError for a failing exit."""
        logger.error(message)
        return CommandError(message, returncode=returncode)
