"""Enumerate numerical Sarkisov links."""
from typing import Any

from fano_defect.exceptions import FanoDefectException
from fano_defect.management.base import FanoDefectCommand
from fano_defect.published_table import TABLE_GENUS, match_solutions
from fano_defect.rendering import OutputFormat, link_rows, render
from fano_defect.takeuchi import AlphaKind, enumerate_links

ALPHA_FILTERS = ('all',) + tuple(kind.value for kind in AlphaKind)


class Command(FanoDefectCommand):
    """links management command."""

    help = 'Enumerate the numerically admissible Sarkisov links through a Fano 3-fold of genus g'

    def add_arguments(self, parser: Any) -> None:
        parser.add_argument('--genus', type=int, required=True, help='Genus g of Y, one of 3..10 or 12')
        parser.add_argument('--hodge', action='store_true', help='Drop links rejected by the Hodge filter')
        parser.add_argument('--alpha', choices=ALPHA_FILTERS, default='all', help='Restrict the kind of α')
        parser.add_argument(
            '--format',
            dest='output_format',
            choices=[output_format.value for output_format in OutputFormat],
            default=OutputFormat.MARKDOWN.value,
        )

    def handle(self, *args: Any, **options: Any) -> None:
        genus = options['genus']
        try:
            solutions = enumerate_links(genus, options['hodge'])
        except FanoDefectException as exc:
            raise self.fail(str(exc)) from exc

        match = match_solutions(solutions) if genus == TABLE_GENUS else None
        if options['alpha'] != 'all':
            solutions = [sol for sol in solutions if sol.alpha.kind.value == options['alpha']]
        rows = link_rows(solutions, match=match)
        self.stdout.write(
            render(rows, OutputFormat(options['output_format']), genus, options['hodge']),
            ending='',
        )
