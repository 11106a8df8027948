"""Compute the defect of a nodal quartic from its nodes."""
from dataclasses import replace
from typing import Any

from fano_defect.exceptions import FanoDefectException, PositiveDimensionalSingularLocus
from fano_defect.fields import FieldMode
from fano_defect.management.base import EXIT_VERIFICATION_FAILED, FanoDefectCommand
from fano_defect.nodal import (
    betti_bookkeeping,
    defect_lower_bound,
    load_configuration,
    nodal_defect,
    verify_nodes,
    verify_singular_locus,
)


class Command(FanoDefectCommand):
    """nodal management command."""

    help = 'Compute the defect of a nodal quartic 3-fold from the conditions its nodes impose on cubics'

    def add_arguments(self, parser: Any) -> None:
        parser.add_argument('--nodes', required=True, help='Node file, first line "# field: rational|eisenstein|float"')
        parser.add_argument('--quartic', help='Quartic file used to verify the nodes')
        parser.add_argument(
            '--field',
            choices=[mode.value for mode in FieldMode],
            help='Field to compute in, the field of the node file by default',
        )
        parser.add_argument('--tol', type=float, help='Rank tolerance in float mode')
        parser.add_argument('--b2', type=int, help='b2 of the quartic, prints the Betti numbers of its resolutions')
        parser.add_argument(
            '--complete',
            action='store_true',
            help='Also check with a Groebner basis that the quartic has no other singular points',
        )

    def handle(self, *args: Any, **options: Any) -> None:
        mode = FieldMode(options['field']) if options['field'] else None
        tolerance = options['tol']
        try:
            cfg = load_configuration(options['nodes'], options['quartic'], mode)
            result = nodal_defect(cfg, tolerance)
            betti = betti_bookkeeping(cfg.count, result.defect, options['b2']) if options['b2'] is not None else None
            report = verify_nodes(cfg, tolerance) if cfg.quartic is not None else None
            locus = verify_singular_locus(cfg, tolerance) if options['complete'] else None
        except OSError as exc:
            raise self.fail(f'{exc.filename}: {exc.strerror}') from exc
        except PositiveDimensionalSingularLocus as exc:
            raise self.fail(str(exc), returncode=EXIT_VERIFICATION_FAILED) from exc
        except FanoDefectException as exc:
            raise self.fail(str(exc)) from exc

        if report is not None:
            result = replace(result, verified=report.passed)

        self.stdout.write(f'field: {cfg.mode.value}')
        self.stdout.write(f'N: {result.nodes}')
        self.stdout.write(f'rank: {result.rank}')
        self.stdout.write(f'defect: {result.defect}')
        self.stdout.write(f'lower bound: {defect_lower_bound(result.nodes)}')
        if result.assumes_nodal_hypotheses:
            self.stdout.write('nodes not verified: the points are assumed to be the nodes of a quartic')
        if betti is not None:
            self.stdout.write(f'b3: {betti.b3}')
            self.stdout.write(f'b2 (small resolution): {betti.b2_small_resolution}')
            self.stdout.write(f'b2 (blow-up): {betti.b2_blowup}')
        if report is None:
            return

        for position, node_report in enumerate(report.nodes, start=1):
            if node_report.passed:
                continue
            self.stderr.write(
                f'node {position}: on quartic={node_report.on_hypersurface}, '
                f'critical={node_report.critical}, ordinary={node_report.ordinary}'
            )
        if not report.passed:
            raise self.fail(
                f'{len(report.failures)} of {result.nodes} nodes failed verification',
                returncode=EXIT_VERIFICATION_FAILED,
            )
        self.stdout.write(self.style.SUCCESS(f'verified: all {result.nodes} nodes are ordinary double points'))
        if locus is None:
            return

        for count in locus.charts:
            if count.scheme_length != count.listed:
                self.stderr.write(
                    f'chart x{count.chart} = 1: {count.scheme_length} singular points, {count.listed} listed'
                )
        if not locus.complete:
            raise self.fail('the quartic has singular points that are not listed', returncode=EXIT_VERIFICATION_FAILED)
        self.stdout.write(self.style.SUCCESS(f'complete: the {result.nodes} nodes are the whole singular locus'))
