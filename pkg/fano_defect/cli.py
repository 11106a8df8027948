"""
Console entry point `fano-defect`.

Runs the fano_defect management commands without a Django project: when no
settings module is configured, a minimal configuration with the app installed
is used.
"""
import os
import sys
from typing import List, Optional

import django
from django.conf import settings
from django.core.management import ManagementUtility

from .settings.common import DEFAULT_FANO_DEFECT_SETTINGS

COMMANDS = ('links', 'bound', 'nodal', 'selfcheck')


def configure() -> None:
    """Configure Django unless the environment already does."""
    if not settings.configured and not os.environ.get('DJANGO_SETTINGS_MODULE'):
        settings.configure(
            INSTALLED_APPS=['fano_defect'],
            FANO_DEFECT_SETTINGS=dict(DEFAULT_FANO_DEFECT_SETTINGS),
            LOGGING={
                'version': 1,
                'disable_existing_loggers': False,
                'handlers': {'stderr': {'class': 'logging.StreamHandler', 'stream': 'ext://sys.stderr'}},
                'loggers': {'fano_defect': {'handlers': ['stderr'], 'level': 'WARNING'}},
            },
        )
    django.setup()


def main(argv: Optional[List[str]] = None) -> None:
    """
    Dispatch `fano-defect <command> [options]`.

    :param argv: The command line, `sys.argv` by default.
    """
    argv = list(sys.argv if argv is None else argv)
    configure()
    if len(argv) < 2 or argv[1] not in COMMANDS + ('help', '--help', '-h', '--version'):
        sys.stderr.write(f'usage: fano-defect {{{",".join(COMMANDS)}}} [options]\n')
        sys.exit(2)
    ManagementUtility(['fano-defect'] + argv[1:]).execute()


if __name__ == '__main__':
    main()
