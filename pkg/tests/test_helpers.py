"""Tests for the fano_defect helpers."""
import pytest

from fano_defect.exceptions import FanoDefectException, GenusOutOfRange
from fano_defect.helpers import exact_quotient, get_setting, integer_roots, verify_genus, verify_param
from fano_defect.settings.common import DEFAULT_FANO_DEFECT_SETTINGS


@pytest.mark.parametrize('value, expected_type, usecase', [
    (3, int, 'integer'),
    ('X22', str, 'string'),
    (1.5, (int, float), 'tuple of types'),
])
def test_verify_param_valid(value, expected_type, usecase):
    """Verify that matching values pass silently."""
    assert verify_param(value, 'value', expected_type) is None, f'failed for usecase: {usecase}'


@pytest.mark.parametrize('value, expected_type, expected_error, usecase', [
    (None, int, 'g is required and must be of type int', 'None'),
    ('3', int, 'g is required and must be of type int', 'string instead of int'),
    (True, int, 'g is required and must be of type int', 'bool is not an int here'),
    (3.0, int, 'g is required and must be of type int', 'float instead of int'),
])
def test_verify_param_invalid(value, expected_type, expected_error, usecase):
    """Verify that verify_param raises with the parameter name and type."""
    with pytest.raises(FanoDefectException) as exc_info:
        verify_param(value, 'g', expected_type)
    assert str(exc_info.value) == expected_error, f'failed for usecase: {usecase}'


def test_get_setting_reads_configured_value(settings):
    """Verify that get_setting prefers FANO_DEFECT_SETTINGS."""
    settings.FANO_DEFECT_SETTINGS = {'pgl_trials': 7}
    assert get_setting('pgl_trials') == 7


def test_get_setting_falls_back_to_defaults(settings):
    """Verify that missing keys fall back to the package defaults."""
    settings.FANO_DEFECT_SETTINGS = {}
    assert get_setting('float_rank_tolerance') == DEFAULT_FANO_DEFECT_SETTINGS['float_rank_tolerance']


@pytest.mark.parametrize('g, usecase', [
    (3, 'quartic'),
    (10, 'largest genus below the gap'),
    (12, 'genus 12'),
])
def test_verify_genus_valid(g, usecase):
    """Verify admissible genera."""
    assert verify_genus(g) == g, f'failed for usecase: {usecase}'


@pytest.mark.parametrize('g, usecase', [
    (2, 'double sextic is not supported by the solver'),
    (11, 'no Fano 3-fold of genus 11'),
    (13, 'above the range'),
])
def test_verify_genus_invalid(g, usecase):
    """Verify that inadmissible genera raise GenusOutOfRange."""
    with pytest.raises(GenusOutOfRange) as exc_info:
        verify_genus(g)
    assert f'Genus {g} is out of range' in str(exc_info.value), f'failed for usecase: {usecase}'


@pytest.mark.parametrize('coefficients, expected, usecase', [
    ((1, -5, -6), [-1, 6], 'two integer roots'),
    ((4, -20, -24), [-1, 6], 'scaled quadratic'),
    ((1, 0, 1), [], 'negative discriminant'),
    ((1, 0, -2), [], 'irrational roots'),
    ((2, -3, 1), [1], 'one integer and one half-integer root'),
    ((0, 2, -6), [3], 'linear'),
    ((0, 2, -5), [], 'linear without integer root'),
    ((0, 0, 1), [], 'constant'),
    ((1, -4, 4), [2], 'double root'),
])
def test_integer_roots(coefficients, expected, usecase):
    """Verify the integer roots of a quadratic."""
    assert integer_roots(*coefficients) == expected, f'failed for usecase: {usecase}'


@pytest.mark.parametrize('numerator, denominator, expected, usecase', [
    (12, 4, 3, 'exact'),
    (-12, 4, -3, 'negative exact'),
    (0, -5, 0, 'zero numerator'),
    (13, 4, None, 'inexact'),
    (1, 0, None, 'division by zero'),
])
def test_exact_quotient(numerator, denominator, expected, usecase):
    """Verify exact integer division."""
    assert exact_quotient(numerator, denominator) == expected, f'failed for usecase: {usecase}'
