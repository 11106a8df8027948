"""Report defect bounds."""
from typing import Any

from fano_defect.defect import (
    QUARTIC_GENUS,
    Containment,
    DefectBoundResult,
    bound_index_two,
    bound_no_quadric,
    bound_plane_quartic,
    bound_with_quadric,
    search_bound,
)
from fano_defect.exceptions import FanoDefectException
from fano_defect.management.base import FanoDefectCommand


class Command(FanoDefectCommand):
    """bound management command."""

    help = 'Bound the defect of a terminal Gorenstein Fano 3-fold of Picard rank 1'

    def add_arguments(self, parser: Any) -> None:
        parser.add_argument('--genus', type=int, help='Genus g of an index-1 Fano 3-fold')
        parser.add_argument(
            '--contains',
            choices=[contains.value for contains in Containment],
            default=Containment.NONE.value,
            help='Special surface contained in Y; plane requires genus 3',
        )
        parser.add_argument('--index2', action='store_true', help='Bound an index-2 Fano 3-fold instead')
        parser.add_argument('--h3', type=int, help='Degree H^3 of the index-2 Fano 3-fold')
        parser.add_argument('--witness', action='store_true', help='Run the contraction search and print its run')

    def handle(self, *args: Any, **options: Any) -> None:
        try:
            result = self.index_two(options) if options['index2'] else self.index_one(options)
        except FanoDefectException as exc:
            raise self.fail(str(exc)) from exc

        self.stdout.write(f'bound: {result.bound}')
        if result.closed_form is not None and result.closed_form != result.bound:
            self.stdout.write(f'closed form: {result.closed_form}')
        for name in ('rank_cap', 'max_e2_steps', 'max_disjoint_planes'):
            value = getattr(result, name)
            if value is not None:
                self.stdout.write(f'{name.replace("_", " ")}: {value}')
        if result.maximizer is not None:
            self.stdout.write(f'maximizer (N, M): {result.maximizer}')
        if options['witness']:
            self.write_witness(result)
        for note in result.notes:
            self.stderr.write(self.style.WARNING(f'note: {note}'))

    def index_two(self, options: dict) -> DefectBoundResult:
        if options['genus'] is not None or options['contains'] != Containment.NONE.value:
            raise self.fail('--index2 cannot be combined with --genus or --contains')
        if options['h3'] is None:
            raise self.fail('--index2 requires --h3')
        return bound_index_two(options['h3'])

    def index_one(self, options: dict) -> DefectBoundResult:
        genus, contains = options['genus'], Containment(options['contains'])
        if options['h3'] is not None:
            raise self.fail('--h3 requires --index2')
        if genus is None:
            raise self.fail('--genus is required unless --index2 is given')
        if contains is Containment.PLANE:
            if genus != QUARTIC_GENUS:
                raise self.fail(f'--contains plane is only valid with --genus {QUARTIC_GENUS}')
            if options['witness']:
                raise self.fail('--witness is not available with --contains plane')
            return bound_plane_quartic()
        if options['witness']:
            return search_bound(genus, allow_quadrics=contains is Containment.QUADRIC)
        if contains is Containment.QUADRIC:
            return bound_with_quadric(genus)
        return bound_no_quadric(genus)

    def write_witness(self, result: DefectBoundResult) -> None:
        witness = result.witness
        if witness is None:
            return
        self.stdout.write(f'start: {witness.start.label}')
        for position, step in enumerate(witness.steps, start=1):
            self.stdout.write(f'  {position}. {step}')
        self.stdout.write(f'fibre space term: {witness.end_product.label} (rank {witness.end_product.rank})')
        self.stdout.write(f'defect: {witness.accounting}')
