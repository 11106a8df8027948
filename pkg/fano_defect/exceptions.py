"""Fano defect exceptions."""
from typing import Optional


class FanoDefectException(Exception):
    """Fano defect exception."""


class GenusOutOfRange(FanoDefectException):
    """Genus outside the range supported by the operation."""


class DegreeOutOfRange(FanoDefectException):
    """Index-two degree outside 1..5."""


class InconsistentTarget(FanoDefectException):
    """Target degree does not match the blow-down degree equation."""


class NonpositiveSurfaceDegree(FanoDefectException):
    """Anticanonical degree of the exceptional divisor is not positive."""


class DegreeExceedsTarget(FanoDefectException):
    """Anticanonical degree of the curve exceeds the target degree."""


class NonpositiveFlopDefect(FanoDefectException):
    """Flop defect e must be a strictly positive integer."""


class NegativeJump(FanoDefectException):
    """Contraction that does not increase the anticanonical degree."""


class FibreBudgetExceeded(FanoDefectException):
    """More than four reducible fibres."""


class ZeroPoint(FanoDefectException):
    """Projective point with all coordinates zero."""


class DuplicateNode(FanoDefectException):
    """Two nodes are the same projective point."""


class MixedFieldModes(FanoDefectException):
    """Coordinates from different coefficient fields in one configuration."""


class NonFiniteMatrix(FanoDefectException):
    """Floating point matrix with an infinite or NaN entry."""


class PositiveDimensionalSingularLocus(FanoDefectException):
    """The singular locus of a quartic is not a finite set of points."""


class MissingPolynomial(FanoDefectException):
    """Node verification requested without a defining quartic."""


class NegativeBetti(FanoDefectException):
    """Betti-number bookkeeping produced a negative number."""


class SearchCapExceeded(FanoDefectException):
    """Internal enumeration safety cap reached."""


class ParseError(FanoDefectException):
    """Input file could not be parsed."""

    def __init__(self, message: str, line: int = 1, column: int = 1, source: Optional[str] = None) -> None:
        self.line = line
        self.column = column
        self.source = source
        location = f'{source}:' if source else ''
        super().__init__(f'{location}{line}:{column}: {message}')


class NodeFileError(ParseError):
    """Malformed node file."""


class PolynomialSyntaxError(ParseError):
    """Malformed or non-quartic polynomial."""
