"""Run the acceptance checks."""
from typing import Any

from fano_defect.management.base import EXIT_SELFCHECK_FAILED, FanoDefectCommand
from fano_defect.selfcheck import MUTATIONS, run_selfcheck


class Command(FanoDefectCommand):
    """selfcheck management command."""

    help = 'Check the solver, the bounds and the nodal calculator against the embedded fixtures'

    def add_arguments(self, parser: Any) -> None:
        parser.add_argument('--mutation', choices=MUTATIONS, help='Replay a known fault; the check must then fail')

    def handle(self, *args: Any, **options: Any) -> None:
        results = run_selfcheck(options['mutation'])
        width = max(len(result.name) for result in results)
        for result in results:
            status = self.style.SUCCESS('PASS') if result.passed else self.style.ERROR('FAIL')
            self.stdout.write(f'{result.name.ljust(width)}  {status}  {result.detail}')
        failed = [result.name for result in results if not result.passed]
        if failed:
            raise self.fail(f'self-check failed: {", ".join(failed)}', returncode=EXIT_SELFCHECK_FAILED)
