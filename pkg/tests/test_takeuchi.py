"""Tests for the numerical Sarkisov link solver."""
import pytest

from fano_defect.classification import FanoDescriptor
from fano_defect.exceptions import FanoDefectException, GenusOutOfRange, SearchCapExceeded
from fano_defect.helpers import VALID_GENERA
from fano_defect.intersection import ANTICANONICAL, CurveInvariants, e1_table, triple_product
from fano_defect.takeuchi import (
    AlphaKind,
    check_solution,
    del_pezzo_candidates,
    enumerate_links,
    enumerate_psi,
    hodge_filter,
    max_deg_f,
    printed_del_pezzo_residual,
    printed_divisorial_lines,
    solve_conic_bundle,
    solve_del_pezzo,
    solve_divisorial,
    surface_degree_alpha,
)


def _psi(target, pa, deg, g=3):
    return e1_table(g, target, CurveInvariants(pa=pa, deg=deg))


X22_ROW_1 = _psi(FanoDescriptor.index_one(12), 0, 8)


def _summary(sol):
    return (sol.x, sol.y, sol.e)


class TestEnumeratePsi:
    """Tests for enumerate_psi."""

    @pytest.mark.parametrize('target, pa, deg, usecase', [
        (FanoDescriptor.index_one(12), 0, 8, 'row 1'),
        (FanoDescriptor.quadric(), 12, 12, 'row 32'),
        (FanoDescriptor.index_two(3), 3, 6, 'row 30 with the H-degree'),
    ])
    def test_contains(self, target, pa, deg, usecase):
        tables = {(table.target, table.curve.pa, table.curve.deg) for table in enumerate_psi(3)}
        assert (target, pa, deg) in tables, f'failed for usecase: {usecase}'

    def test_quartic_closed_forms(self):
        """At genus 3 every blow-down satisfies the closed forms per index."""
        for table in enumerate_psi(3):
            target, pa, deg = table.target, table.curve.pa, table.curve.deg
            if target.index == 1:
                assert deg == target.parameter - 4 + pa
            elif target.index == 2:
                assert 2 * deg == 4 * target.parameter - 3 + pa
            elif target.index == 3:
                assert 3 * deg == 24 + pa
            else:
                assert 4 * deg == 29 + pa

    def test_targets_have_larger_degree(self):
        for g in VALID_GENERA:
            for table in enumerate_psi(g):
                assert table.target.anticanonical_degree > 2 * g - 2
                assert table.k2e > 0

    @pytest.mark.parametrize('g, usecase', [(2, 'genus 2'), (11, 'genus 11'), (13, 'genus 13')])
    def test_invalid_genus(self, g, usecase):
        with pytest.raises(GenusOutOfRange):
            enumerate_psi(g)


class TestSolvers:
    """Tests for the three α solvers."""

    def test_conic_bundle_row_4(self):
        solutions = solve_conic_bundle(_psi(FanoDescriptor.index_one(12), 2, 10))
        assert [(_summary(sol), sol.alpha.delta_deg) for sol in solutions] == [((4, 1, 92), 4)]
        assert solutions[0].max_deg_f == 8

    def test_conic_bundle_row_26(self):
        solutions = solve_conic_bundle(_psi(FanoDescriptor.index_one(5), 0, 1))
        assert [(sol.x, sol.y, sol.alpha.delta_deg) for sol in solutions] == [(2, 1, 7)]
        assert solutions[0].e > 0

    def test_conic_bundle_empty(self):
        assert solve_conic_bundle(X22_ROW_1) == []

    @pytest.mark.parametrize('psi, expected, usecase', [
        (_psi(FanoDescriptor.index_one(7), 1, 4), (2, 1, 12, 4), 'row 21'),
        (_psi(FanoDescriptor.index_one(9), 1, 6), (3, 1, 48, 6), 'row 12'),
        (_psi(FanoDescriptor.index_two(2), 1, 3), (3, 1, 48, 6), 'row 28, V2 has -K^3 = 16'),
    ])
    def test_del_pezzo(self, psi, expected, usecase):
        solutions = solve_del_pezzo(psi)
        assert [(sol.x, sol.y, sol.e, sol.alpha.d) for sol in solutions] == [expected], f'failed for usecase: {usecase}'

    def test_del_pezzo_printed_rule_gives_zero_defect(self):
        """The published second equation gives e = 0 on row 21."""
        psi = _psi(FanoDescriptor.index_one(7), 1, 4)
        assert del_pezzo_candidates(psi, 'printed') == [(2, 1, 0, 4)]
        assert solve_del_pezzo(psi, 'printed') == []

    def test_del_pezzo_unknown_rule(self):
        with pytest.raises(FanoDefectException) as exc_info:
            del_pezzo_candidates(X22_ROW_1, 'verbatim')
        assert 'Unknown fibre rule' in str(exc_info.value)

    def test_del_pezzo_rejects_negative_defect(self):
        """The only candidate behind the rejected V5 row has e = -10."""
        psi = _psi(FanoDescriptor.index_two(5), 9, 13)
        assert (4, 1, -10, 6) in del_pezzo_candidates(psi)
        assert solve_del_pezzo(psi) == []

    @pytest.mark.parametrize('psi, target, expected, usecase', [
        (X22_ROW_1, FanoDescriptor.index_one(12), (6, 5, 1, 268, 0, 8), 'row 1'),
        (_psi(FanoDescriptor.index_one(9), 0, 5), FanoDescriptor.quadric(), (4, 11, 3, None, 3, 9), 'row 10'),
        (_psi(FanoDescriptor.index_one(6), 0, 2), FanoDescriptor.index_two(5), (3, 5, 2, None, 7, 12), 'row 23'),
    ])
    def test_divisorial(self, psi, target, expected, usecase):
        solutions = [sol for sol in solve_divisorial(psi) if sol.alpha.target == target]
        assert len(solutions) == 1, f'failed for usecase: {usecase}'
        sol = solutions[0]
        k, x, y, e, c_pa, c_deg = expected
        assert (sol.k, sol.x, sol.y, sol.alpha.curve.pa, sol.alpha.curve.deg) == (k, x, y, c_pa, c_deg), \
            f'failed for usecase: {usecase}'
        if e is not None:
            assert sol.e == e, f'failed for usecase: {usecase}'


class TestSolutionMeasures:
    """Tests for hodge_filter, max_deg_f and the printed-equation residuals."""

    def test_row_measures(self, genus3_match):
        row_1, row_4, row_5, row_16 = (genus3_match.matched[row] for row in (1, 4, 5, 16))
        assert hodge_filter(row_1)
        assert not hodge_filter(row_16)
        assert hodge_filter(row_4)
        assert max_deg_f(row_1) == 10
        assert max_deg_f(row_4) == 8
        assert max_deg_f(row_5) == 5
        assert surface_degree_alpha(row_1) == 10
        assert surface_degree_alpha(row_5) == 5
        assert surface_degree_alpha(row_4) is None

    def test_printed_del_pezzo_residual_vanishes_only_for_x_one(self):
        for g in VALID_GENERA:
            for sol in enumerate_links(g, False):
                if sol.alpha.kind is AlphaKind.DEL_PEZZO:
                    assert (printed_del_pezzo_residual(sol) == 0) == (sol.x == 1)

    def test_printed_divisorial_lines_hold(self):
        for g in VALID_GENERA:
            for sol in enumerate_links(g, False):
                if sol.alpha.kind is AlphaKind.DIVISORIAL:
                    assert printed_divisorial_lines(sol) == (0, 0, 0, 0)

    def test_pullback_cube_equals_square_times_anticanonical(self):
        for g in VALID_GENERA:
            for sol in enumerate_links(g, False):
                if sol.alpha.kind is not AlphaKind.DIVISORIAL:
                    continue
                pullback = (sol.y * sol.k, -sol.y)
                cube = triple_product(sol.psi, sol.e, pullback, pullback, pullback)
                assert cube == triple_product(sol.psi, sol.e, pullback, pullback, ANTICANONICAL)
                assert cube == sol.alpha.target.anticanonical_degree


class TestEnumerateLinks:
    """Tests for enumerate_links."""

    @pytest.mark.parametrize('g', VALID_GENERA)
    def test_solutions_are_sound(self, g):
        for sol in enumerate_links(g, False):
            assert sol.e >= 1
            assert sol.max_deg_f >= 1
            assert check_solution(sol) == []

    def test_deterministic(self, genus3_links):
        assert enumerate_links(3, False) == genus3_links

    def test_canonical_order(self, genus3_links):
        keys = [sol.sort_key for sol in genus3_links]
        assert keys == sorted(keys)
        assert len(set(genus3_links)) == len(genus3_links)

    def test_hodge_filter_only_removes(self, genus3_links):
        filtered = enumerate_links(3, True)
        assert set(filtered) <= set(genus3_links)
        assert all(hodge_filter(sol) for sol in filtered)

    def test_custom_hodge_predicate(self, genus3_links):
        kept = enumerate_links(3, True, hodge_predicate=lambda sol: sol.alpha.kind is AlphaKind.CONIC_BUNDLE)
        assert kept
        assert all(sol.alpha.kind is AlphaKind.CONIC_BUNDLE for sol in kept)

    def test_search_cap(self, settings):
        settings.FANO_DEFECT_SETTINGS = {'search_safety_cap': 1}
        with pytest.raises(SearchCapExceeded):
            enumerate_links(3, False)

    def test_apply_hodge_must_be_bool(self):
        with pytest.raises(FanoDefectException) as exc_info:
            enumerate_links(3, 'yes')
        assert 'apply_hodge is required' in str(exc_info.value)
