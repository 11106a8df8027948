"""Tests for the defect bounds and the contraction search."""
import pytest

from fano_defect.defect import (
    BoundScenario,
    Containment,
    ContractionStep,
    DefectBoundResult,
    EndProduct,
    MmpState,
    StepKind,
    Witness,
    bound_index_two,
    bound_no_quadric,
    bound_plane_quartic,
    bound_with_quadric,
    conjectural_bounds,
    main_theorem,
    main_theorem_two,
    max_disjoint_planes,
    quadric_step_budget,
    replay_witness,
    search_bound,
    weil_rank_del_pezzo3,
)
from fano_defect.exceptions import (
    DegreeOutOfRange,
    FanoDefectException,
    FibreBudgetExceeded,
    GenusOutOfRange,
    SearchCapExceeded,
)
from fano_defect.helpers import VALID_GENERA


@pytest.mark.parametrize('g, expected, usecase', [
    (3, 8, 'quartic'),
    (10, 5, 'genus 10'),
    (12, 4, 'genus 12'),
])
def test_bound_no_quadric(g, expected, usecase):
    """Verify floor((12 - g) / 2) + 4."""
    result = bound_no_quadric(g)
    assert result.bound == expected, f'failed for usecase: {usecase}'
    assert result.scenario is BoundScenario.NO_PLANE_NO_QUADRIC, f'failed for usecase: {usecase}'


@pytest.mark.parametrize('g, expected, usecase', [
    (3, 11, 'quartic'),
    (7, 7, 'genus 7'),
    (12, 2, 'genus 12'),
])
def test_bound_with_quadric(g, expected, usecase):
    """Verify 14 - g."""
    assert bound_with_quadric(g).bound == expected, f'failed for usecase: {usecase}'


@pytest.mark.parametrize('g', [2, 11, 13])
def test_bounds_reject_invalid_genus(g):
    """Verify the genus range of the closed forms."""
    with pytest.raises(GenusOutOfRange):
        bound_no_quadric(g)
    with pytest.raises(GenusOutOfRange):
        bound_with_quadric(g)


class TestIndexTwo:
    """Tests for the index-2 bound."""

    @pytest.mark.parametrize('h3', [1, 2, 3, 4, 5])
    def test_bound_index_two(self, h3):
        result = bound_index_two(h3)
        assert result.rank_cap == 8 - h3
        assert result.bound == 7 - h3
        assert result.max_e2_steps == 5 - h3
        assert result.max_disjoint_planes == max_disjoint_planes(h3) == 7 - h3
        assert result.witness.defect == result.bound
        assert replay_witness(result.witness) == []

    def test_h3_two(self):
        result = bound_index_two(2)
        assert (result.rank_cap, result.bound) == (6, 5)

    @pytest.mark.parametrize('h3', [0, 6])
    def test_invalid_degree(self, h3):
        with pytest.raises(DegreeOutOfRange) as exc_info:
            bound_index_two(h3)
        assert f'h3={h3}' in str(exc_info.value)


class TestPlaneQuartic:
    """Tests for the bound of quartics containing a plane."""

    @pytest.mark.parametrize('n, m, expected, usecase', [
        (0, 0, 8, 'no reducible fibres'),
        (4, 0, 16, 'Burkhardt Weil rank'),
        (2, 2, 14, 'mixed fibres'),
    ])
    def test_weil_rank(self, n, m, expected, usecase):
        assert weil_rank_del_pezzo3(n, m) == expected, f'failed for usecase: {usecase}'

    def test_fibre_budget(self):
        with pytest.raises(FibreBudgetExceeded) as exc_info:
            weil_rank_del_pezzo3(3, 2)
        assert 'At most 4 reducible fibres' in str(exc_info.value)

    def test_negative_fibre_count(self):
        with pytest.raises(FanoDefectException):
            weil_rank_del_pezzo3(-1, 0)

    def test_bound(self):
        result = bound_plane_quartic()
        assert result.bound == 15
        assert result.maximizer == (4, 0)
        assert result.notes


@pytest.mark.parametrize('contains, expected, usecase', [
    (Containment.NONE, 8, 'neither plane nor quadric'),
    (Containment.QUADRIC, 11, 'quadric'),
    (Containment.PLANE, 15, 'plane'),
])
def test_main_theorem(contains, expected, usecase):
    """Verify the three bounds for quartics."""
    assert main_theorem(contains).bound == expected, f'failed for usecase: {usecase}'


class TestSearchBound:
    """Tests for the contraction search."""

    @pytest.mark.parametrize('g', VALID_GENERA)
    def test_without_quadrics_matches_closed_form(self, g):
        result = search_bound(g, False)
        assert result.bound == bound_no_quadric(g).bound
        assert not result.exceeds_closed_form
        assert result.notes == ()
        assert result.witness.defect == result.bound
        assert replay_witness(result.witness) == []

    @pytest.mark.parametrize('g', [3, 4, 5, 6, 7, 8, 9])
    def test_with_quadrics_matches_closed_form(self, g):
        result = search_bound(g, True)
        assert result.bound == 14 - g
        assert result.closed_form == 14 - g
        assert replay_witness(result.witness) == []

    @pytest.mark.parametrize('g, expected', [(10, 5), (12, 4)])
    def test_with_quadrics_above_closed_form(self, g, expected):
        """Quadric steps are optional, so the search never drops below the no-quadric bound."""
        result = search_bound(g, True)
        assert result.bound == expected
        assert result.exceeds_closed_form
        assert 'above the closed form' in result.notes[0]

    def test_quadric_budget_override(self):
        assert quadric_step_budget(3) == 6
        assert quadric_step_budget(12) == 0
        assert search_bound(3, True, quadric_budget=8).bound == 12

    def test_witness_prefers_fewer_steps(self):
        witness = search_bound(12, False).witness
        assert witness.end_product is EndProduct.CONIC_BUNDLE_F0_F2
        assert [step.kind for step in witness.steps] == [StepKind.ENDPOINT, StepKind.ENDPOINT]
        assert witness.accounting == '2 steps + rank 3 - 1 = 4'

    def test_search_cap(self, settings):
        settings.FANO_DEFECT_SETTINGS = {'search_safety_cap': 2}
        with pytest.raises(SearchCapExceeded):
            search_bound(3, True)


class TestReplayWitness:
    """Tests for replay_witness."""

    def test_illegal_generic_step(self):
        x4, x6 = MmpState(1, 4), MmpState(1, 6)
        witness = Witness(x4, (ContractionStep(StepKind.GENERIC, x4, x6),), EndProduct.RANK_ONE_FANO)
        violations = replay_witness(witness)
        assert len(violations) == 1
        assert 'is not a legal generic contraction' in violations[0]

    def test_quadric_after_other_step(self):
        x4, x8, x10 = MmpState(1, 4), MmpState(1, 8), MmpState(1, 10)
        witness = Witness(
            x4,
            (ContractionStep(StepKind.GENERIC, x4, x8), ContractionStep(StepKind.QUADRIC, x8, x10)),
            EndProduct.RANK_ONE_FANO,
        )
        assert replay_witness(witness) == ['step 2 contracts a quadric after another contraction']

    def test_broken_chain(self):
        x4, x8, x16 = MmpState(1, 4), MmpState(1, 8), MmpState(2, 16)
        witness = Witness(x4, (ContractionStep(StepKind.E2, x8, x16),), EndProduct.RANK_ONE_FANO)
        assert replay_witness(witness) == ['step 1 starts at X8, expected X4']


def test_negative_bound_is_rejected():
    """Verify the DefectBoundResult invariant."""
    with pytest.raises(FanoDefectException):
        DefectBoundResult(BoundScenario.INDEX_TWO, -1)


def test_main_theorem_two():
    """Verify the alternatives for a quartic 3-fold."""
    alternatives = dict(main_theorem_two())
    assert len(alternatives) == 6
    assert 'enumerate_links(3, apply_hodge=True)' in alternatives['scroll']


def test_conjectural_bounds():
    """Verify the conjectured values."""
    bounds = conjectural_bounds()
    assert bounds['genus 6'] == 8
    assert bounds['genus 12'] == 5
    assert bounds['double sextic (g=2)'] == 18
    assert 'genus 5' not in bounds
