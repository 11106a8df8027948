"""Fano defect helpers."""

from math import isqrt
from typing import Any, Iterable, List, Optional

from django.conf import settings

from .exceptions import FanoDefectException, GenusOutOfRange
from .settings.common import DEFAULT_FANO_DEFECT_SETTINGS

VALID_GENERA = (3, 4, 5, 6, 7, 8, 9, 10, 12)


def verify_param(value: Any, name: str, expected_type: Any) -> None:
    """
    Verify that a parameter is present and of the expected type.

    :param value: The value to check.
    :param name: The parameter name used in the error message.
    :param expected_type: A type or tuple of types.
    :raises FanoDefectException: If the value is None or of the wrong type.
    """
    # bool is an int subclass, it is never a valid integer argument here
    if value is None or not isinstance(value, expected_type) or (
        isinstance(value, bool) and expected_type is int
    ):
        type_name = getattr(expected_type, '__name__', str(expected_type))
        raise FanoDefectException(f'{name} is required and must be of type {type_name}')


def get_setting(name: str) -> Any:
    """
    Return a FANO_DEFECT_SETTINGS value, falling back to the package defaults.

    :param name: The setting key.
    :return: The configured value.
    """
    configured = getattr(settings, 'FANO_DEFECT_SETTINGS', {}) if settings.configured else {}
    if name in configured:
        return configured[name]
    return DEFAULT_FANO_DEFECT_SETTINGS[name]


def verify_genus(g: Any, allowed: Iterable[int] = VALID_GENERA) -> int:
    """
    Verify that g is an integer genus in the allowed set.

    :param g: The genus.
    :param allowed: The admissible genera.
    :return: The genus.
    :raises GenusOutOfRange: If g is not admissible.
    """
    verify_param(g, 'g', int)
    allowed = tuple(allowed)
    if g not in allowed:
        raise GenusOutOfRange(f'Genus {g} is out of range; expected one of {", ".join(map(str, allowed))}')
    return g


def integer_roots(a: int, b: int, c: int) -> List[int]:
    """
    Return the integer roots of a*t^2 + b*t + c, sorted ascending.

    :param a: Quadratic coefficient.
    :param b: Linear coefficient.
    :param c: Constant coefficient.
    :return: Distinct integer roots.
    """
    if a == 0:
        if b == 0:
            return []
        return [-c // b] if c % b == 0 else []
    discriminant = b * b - 4 * a * c
    if discriminant < 0:
        return []
    root = isqrt(discriminant)
    if root * root != discriminant:
        return []
    roots = set()
    for numerator in (-b - root, -b + root):
        if numerator % (2 * a) == 0:
            roots.add(numerator // (2 * a))
    return sorted(roots)


def exact_quotient(numerator: int, denominator: int) -> Optional[int]:
    """
    Divide two integers when the division is exact.

    :return: The quotient, or None when the denominator is zero or does not divide the numerator.
    """
    if denominator == 0 or numerator % denominator:
        return None
    return numerator // denominator
