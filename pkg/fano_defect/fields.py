"""
Coefficient fields for node coordinates and node-file parsing.

Three modes are supported: exact rationals (`fractions.Fraction`), exact
elements a + bω of Q(ω) with ω^2 + ω + 1 = 0 (`EisensteinNumber`) and
floating point numbers checked against a rank tolerance.
"""
import logging
import re
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import FanoDefectException, MixedFieldModes, NodeFileError

logger = logging.getLogger(__name__)

SQRT3_HALF = np.sqrt(3) / 2
NODE_ARITY = 5

_RATIONAL = r'\d+(?:/\d+)?'
_EISENSTEIN_PATTERN = re.compile(
    rf'^(?P<a>[+-]?{_RATIONAL})?(?:(?P<sign>[+-])?(?:(?P<b>{_RATIONAL})\*)?(?P<w>w))?$'
)
_RATIONAL_PATTERN = re.compile(rf'^[+-]?{_RATIONAL}$')
_HEADER_PATTERN = re.compile(r'^#\s*field\s*:\s*(?P<mode>\w+)\s*$')


class FieldMode(Enum):
    """Coefficient field of a node configuration."""

    RATIONAL = 'rational'
    EISENSTEIN = 'eisenstein'
    FLOAT = 'float'

    @property
    def exact(self) -> bool:
        return self is not FieldMode.FLOAT


class EisensteinNumber:
    """An element a + bω of Q(ω) with rational a and b."""

    __slots__ = ('_a', '_b')

    def __init__(self, a: Union[int, Fraction] = 0, b: Union[int, Fraction] = 0) -> None:
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def omega(cls) -> 'EisensteinNumber':
        """The primitive cube root of unity ω."""
        return cls(0, 1)

    @classmethod
    def coerce(cls, other: object) -> Optional['EisensteinNumber']:
        if isinstance(other, EisensteinNumber):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return cls(other)
        return None

    def __repr__(self) -> str:
        return f'EisensteinNumber({self._a}, {self._b})'

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        if self._a == 0:
            return f'{self._b}*w'
        sign = '-' if self._b < 0 else '+'
        return f'{self._a}{sign}{abs(self._b)}*w'

    def __eq__(self, other: object) -> bool:
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        return self._a == other.a and self._b == other.b

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __bool__(self) -> bool:
        return bool(self._a) or bool(self._b)

    def __neg__(self) -> 'EisensteinNumber':
        return EisensteinNumber(-self._a, -self._b)

    def __add__(self, other: object) -> 'EisensteinNumber':
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        return EisensteinNumber(self._a + other.a, self._b + other.b)

    __radd__ = __add__

    def __sub__(self, other: object) -> 'EisensteinNumber':
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        return EisensteinNumber(self._a - other.a, self._b - other.b)

    def __rsub__(self, other: object) -> 'EisensteinNumber':
        return -self + other

    def __mul__(self, other: object) -> 'EisensteinNumber':
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        # ω^2 = -1 - ω
        bd = self._b * other.b
        return EisensteinNumber(
            self._a * other.a - bd,
            self._a * other.b + self._b * other.a - bd,
        )

    __rmul__ = __mul__

    def conjugate(self) -> 'EisensteinNumber':
        """Complex conjugate: ω maps to ω^2 = -1 - ω."""
        return EisensteinNumber(self._a - self._b, -self._b)

    @property
    def norm(self) -> Fraction:
        return self._a * self._a - self._a * self._b + self._b * self._b

    def inverse(self) -> 'EisensteinNumber':
        norm = self.norm
        if norm == 0:
            raise ZeroDivisionError('EisensteinNumber division by zero')
        conj = self.conjugate()
        return EisensteinNumber(conj.a / norm, conj.b / norm)

    def __truediv__(self, other: object) -> 'EisensteinNumber':
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> 'EisensteinNumber':
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> 'EisensteinNumber':
        if exponent < 0:
            return self.inverse() ** -exponent
        result, base = EisensteinNumber(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __complex__(self) -> complex:
        return complex(float(self._a) - float(self._b) / 2, float(self._b) * SQRT3_HALF)


FieldElement = Union[Fraction, EisensteinNumber, float, complex]


def mode_of(value: object) -> FieldMode:
    """
    Return the field mode a coordinate belongs to.

    :raises FanoDefectException: If the value is not a field element.
    """
    if isinstance(value, EisensteinNumber):
        return FieldMode.EISENSTEIN
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return FieldMode.RATIONAL
    if isinstance(value, (float, complex)):
        return FieldMode.FLOAT
    raise FanoDefectException(f'{value!r} is not a field element')


def common_mode(values: Iterable[object]) -> FieldMode:
    """
    Return the single mode shared by all values.

    Rationals embed into Q(ω), so rational and Eisenstein coordinates may be combined.

    :raises MixedFieldModes: If exact and floating point coordinates are mixed.
    """
    modes = {mode_of(value) for value in values}
    if FieldMode.FLOAT in modes and len(modes) > 1:
        raise MixedFieldModes(f'Cannot mix {", ".join(sorted(mode.value for mode in modes))} coordinates')
    if FieldMode.EISENSTEIN in modes:
        return FieldMode.EISENSTEIN
    if FieldMode.FLOAT in modes:
        return FieldMode.FLOAT
    return FieldMode.RATIONAL


def to_mode(value: object, mode: FieldMode) -> FieldElement:
    """Convert an exact value to the representation used by `mode`."""
    if mode is FieldMode.EISENSTEIN:
        return EisensteinNumber.coerce(value)
    if mode is FieldMode.FLOAT:
        return complex(value) if isinstance(value, (EisensteinNumber, complex)) else float(value)
    return Fraction(value)


def to_complex(value: FieldElement) -> complex:
    """Embed a field element in the complex numbers."""
    return complex(value)


def parse_coordinate(text: str, mode: FieldMode) -> FieldElement:
    """
    Parse one coordinate.

    :param text: `p/q` or an integer; `p/q+r/s*w` for Eisenstein numbers; a float literal.
    :param mode: The field of the file.
    :return: The coordinate.
    :raises ValueError: If the text is not a valid coordinate for the mode.
    """
    text = text.strip().replace(' ', '')
    if not text:
        raise ValueError('empty coordinate')
    if mode is FieldMode.FLOAT:
        value = float(text)
        if not np.isfinite(value):
            raise ValueError(f'non-finite float {text!r}')
        return value
    if mode is FieldMode.RATIONAL:
        if not _RATIONAL_PATTERN.match(text):
            raise ValueError(f'invalid rational {text!r}')
        return _fraction(text)

    match = _EISENSTEIN_PATTERN.match(text)
    if match is None or not (match.group('a') or match.group('w')):
        raise ValueError(f'invalid Eisenstein number {text!r}')
    if match.group('a') and match.group('w') and not match.group('sign'):
        raise ValueError(f'missing sign before the w term in {text!r}')
    a = _fraction(match.group('a')) if match.group('a') else Fraction(0)
    b = Fraction(0)
    if match.group('w'):
        b = _fraction(match.group('b')) if match.group('b') else Fraction(1)
        if match.group('sign') == '-':
            b = -b
    return EisensteinNumber(a, b)


def _fraction(text: str) -> Fraction:
    denominator = text.partition('/')[2]
    if denominator and int(denominator) == 0:
        raise ValueError(f'zero denominator in {text!r}')
    return Fraction(text)


def parse_node_file(text: str, source: Optional[str] = None) -> Tuple[FieldMode, List[Tuple[FieldElement, ...]]]:
    """
    Parse a node file.

    The first non-empty line must be `# field: rational|eisenstein|float`. Each further
    non-empty line that is not a comment holds five comma separated coordinates.

    :param text: The file contents.
    :param source: File name used in error messages.
    :return: The field mode and the list of nodes.
    :raises NodeFileError: With the line and column of the first problem.
    """
    mode = None
    nodes = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if mode is None:
            header = _HEADER_PATTERN.match(stripped)
            if header is None:
                raise NodeFileError('missing header "# field: rational|eisenstein|float"', line_number, 1, source)
            try:
                mode = FieldMode(header.group('mode').lower())
            except ValueError:
                column = line.index(header.group('mode')) + 1
                raise NodeFileError(f'unknown field {header.group("mode")!r}', line_number, column, source)
            continue
        if stripped.startswith('#'):
            continue
        nodes.append(_parse_node_line(line, line_number, mode, source))

    if mode is None:
        raise NodeFileError('missing header "# field: rational|eisenstein|float"', 1, 1, source)
    logger.debug(f'parsed {len(nodes)} {mode.value} nodes from {source or "text"}')
    return mode, nodes


def _parse_node_line(line: str, line_number: int, mode: FieldMode, source: Optional[str]) -> Tuple[FieldElement, ...]:
    fields = line.split(',')
    if len(fields) != NODE_ARITY:
        raise NodeFileError(f'expected {NODE_ARITY} coordinates, got {len(fields)}', line_number, 1, source)
    coordinates = []
    column = 1
    for field_text in fields:
        try:
            coordinates.append(parse_coordinate(field_text, mode))
        except ValueError as exc:
            offset = len(field_text) - len(field_text.lstrip())
            raise NodeFileError(str(exc), line_number, column + offset, source) from exc
        column += len(field_text) + 1
    return tuple(coordinates)


def format_coordinate(value: FieldElement) -> str:
    """Inverse of `parse_coordinate`."""
    if isinstance(value, (float, complex)):
        return repr(value)
    return str(value)


def format_node_file(mode: FieldMode, nodes: Sequence[Sequence[FieldElement]]) -> str:
    """Render nodes in the node-file format."""
    lines = [f'# field: {mode.value}']
    lines.extend(','.join(format_coordinate(value) for value in node) for node in nodes)
    return '\n'.join(lines) + '\n'
