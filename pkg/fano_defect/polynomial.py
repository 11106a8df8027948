"""
Homogeneous quartic polynomials in x0..x4.

The text form is parsed by a small recursive-descent parser into a sympy `Poly`
over QQ; evaluation, gradient and Hessian work over any field element mode.
"""
import logging
import re
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import List, Optional, Sequence, Tuple

import sympy

from .exceptions import PolynomialSyntaxError, PositiveDimensionalSingularLocus
from .fields import FieldElement

logger = logging.getLogger(__name__)

VARIABLES = sympy.symbols('x0:5')
QUARTIC_DEGREE = 4

_TOKEN_PATTERN = re.compile(r'\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<var>x[0-4])|(?P<op>[-+*^()]))')

Term = Tuple[Fraction, Tuple[int, ...]]


class _Parser:
    """
    expr := ['+'|'-'] term (('+'|'-') term)*
    term := factor ('*' factor)*
    factor := coefficient | var ('^' int)? | '(' expr ')'
    """

    def __init__(self, text: str, source: Optional[str]) -> None:
        self.text = text
        self.source = source
        self.tokens = self._tokenize()
        self.position = 0

    def _location(self, offset: int) -> Tuple[int, int]:
        line = self.text.count('\n', 0, offset) + 1
        column = offset - (self.text.rfind('\n', 0, offset) + 1) + 1
        return line, column

    def error(self, message: str, offset: Optional[int] = None) -> PolynomialSyntaxError:
        if offset is None:
            offset = self.tokens[self.position][2] if self.position < len(self.tokens) else len(self.text.rstrip())
        line, column = self._location(offset)
        return PolynomialSyntaxError(message, line, column, self.source)

    def _tokenize(self) -> List[Tuple[str, str, int]]:
        tokens = []
        offset = 0
        stripped_end = len(self.text.rstrip())
        while offset < stripped_end:
            match = _TOKEN_PATTERN.match(self.text, offset)
            if match is None or match.end() == offset:
                bad = offset + len(self.text[offset:]) - len(self.text[offset:].lstrip())
                line, column = self._location(bad)
                raise PolynomialSyntaxError(f'unexpected character {self.text[bad]!r}', line, column, self.source)
            kind = match.lastgroup
            tokens.append((kind, match.group(kind), match.start(kind)))
            offset = match.end()
        return tokens

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def accept(self, *values: str) -> Optional[Tuple[str, str, int]]:
        token = self.peek()
        if token is not None and token[0] == 'op' and token[1] in values:
            self.position += 1
            return token
        return None

    def parse(self) -> Tuple[sympy.Expr, List[Tuple[sympy.Expr, int]]]:
        if not self.tokens:
            raise self.error('empty polynomial', 0)
        expression, terms = self.expr()
        if self.peek() is not None:
            raise self.error(f'unexpected {self.peek()[1]!r}')
        return expression, terms

    def expr(self) -> Tuple[sympy.Expr, List[Tuple[sympy.Expr, int]]]:
        terms = []
        start = self.peek()[2] if self.peek() else len(self.text)
        sign = 1
        if self.accept('-'):
            sign = -1
        else:
            self.accept('+')
        value = self.term()
        terms.append((sign * value, start))
        while True:
            token = self.accept('+', '-')
            if token is None:
                break
            start = self.peek()[2] if self.peek() else token[2]
            value = self.term()
            terms.append((value if token[1] == '+' else -value, start))
        return sympy.Add(*[term for term, _ in terms]), terms

    def term(self) -> sympy.Expr:
        factors = [self.factor()]
        while self.accept('*'):
            factors.append(self.factor())
        return sympy.Mul(*factors)

    def factor(self) -> sympy.Expr:
        token = self.peek()
        if token is None:
            raise self.error('unexpected end of input')
        kind, value, _ = token
        if kind == 'number':
            denominator = value.partition('/')[2]
            if denominator and int(denominator) == 0:
                raise self.error(f'zero denominator in {value!r}')
            self.position += 1
            return sympy.Rational(value)
        if kind == 'var':
            self.position += 1
            base = VARIABLES[int(value[1])]
            if self.accept('^'):
                exponent = self.peek()
                if exponent is None or exponent[0] != 'number' or '/' in exponent[1]:
                    raise self.error('expected an integer exponent')
                self.position += 1
                return base ** int(exponent[1])
            return base
        if self.accept('('):
            inner, _ = self.expr()
            if not self.accept(')'):
                raise self.error("expected ')'")
            return inner
        raise self.error(f'unexpected {value!r}')


class Quartic:
    """A homogeneous quartic form in x0..x4 with rational coefficients."""

    def __init__(self, poly: sympy.Poly) -> None:
        self.poly = poly
        self._terms = _to_terms(poly)
        self._gradient = [_to_terms(poly.diff(variable)) for variable in VARIABLES]
        self._hessian = [
            [_to_terms(poly.diff(first).diff(second)) for second in VARIABLES]
            for first in VARIABLES
        ]

    def __str__(self) -> str:
        return str(self.poly.as_expr())

    def evaluate(self, point: Sequence[FieldElement]) -> FieldElement:
        """f(point)."""
        return _evaluate(self._terms, point)

    def gradient(self, point: Sequence[FieldElement]) -> List[FieldElement]:
        """The five partial derivatives at point."""
        return [_evaluate(terms, point) for terms in self._gradient]

    def hessian(self, point: Sequence[FieldElement]) -> List[List[FieldElement]]:
        """The 5x5 matrix of second partial derivatives at point."""
        return [[_evaluate(terms, point) for terms in row] for row in self._hessian]

    def singular_scheme_length(self, chart: int) -> int:
        """
        Length of the scheme cut out by the gradient on the affine chart x_chart = 1.

        Computed from a grevlex Groebner basis over QQ as the number of standard monomials.
        Every ordinary double point in the chart contributes exactly 1.

        :param chart: Index of the coordinate set to 1.
        :return: The length, 0 when the quartic is smooth on the chart.
        :raises PositiveDimensionalSingularLocus: If the singular locus meets the chart in a curve or more.
        """
        pivot = VARIABLES[chart]
        gens = [variable for variable in VARIABLES if variable != pivot]
        equations = [
            derivative.as_expr().subs(pivot, 1)
            for derivative in (self.poly.diff(variable) for variable in VARIABLES)
        ]
        equations = [equation for equation in equations if equation != 0]
        if not equations:
            raise PositiveDimensionalSingularLocus(f'gradient vanishes identically on chart x{chart} = 1')
        basis = sympy.groebner(equations, *gens, order='grevlex', domain='QQ')
        if list(basis.exprs) == [1]:
            return 0
        if not basis.is_zero_dimensional:
            raise PositiveDimensionalSingularLocus(f'singular locus is not finite on chart x{chart} = 1')
        leading = [poly.monoms(order='grevlex')[0] for poly in basis.polys]
        box = [
            min(monomial[index] for monomial in leading if sum(monomial) == monomial[index])
            for index in range(len(gens))
        ]
        length = sum(
            1
            for exponents in product(*(range(bound) for bound in box))
            if not any(all(e >= m for e, m in zip(exponents, monomial)) for monomial in leading)
        )
        logger.debug(f'singular scheme on chart x{chart} = 1 has length {length}')
        return length



def parse_quartic(text: str, source: Optional[str] = None) -> Quartic:
    """
    Parse a homogeneous quartic in x0..x4.

    :param text: The polynomial, for example `x0^4 - x0*(x1^3 + x2^3) + 3*x1*x2*x3*x4`.
    :param source: File name used in error messages.
    :return: The quartic.
    :raises PolynomialSyntaxError: On a syntax error, or when the input is not homogeneous of degree 4.
    """
    parser = _Parser(text, source)
    expression, terms = parser.parse()
    for term, offset in terms:
        term_poly = sympy.Poly(term, *VARIABLES, domain='QQ')
        if term_poly.is_zero:
            continue
        if not term_poly.is_homogeneous or term_poly.total_degree() != QUARTIC_DEGREE:
            raise parser.error(f'term is not homogeneous of degree {QUARTIC_DEGREE}', offset)
    poly = sympy.Poly(expression, *VARIABLES, domain='QQ')
    if poly.is_zero:
        raise parser.error('polynomial is identically zero', 0)
    logger.debug(f'parsed quartic with {len(poly.terms())} terms from {source or "text"}')
    return Quartic(poly)


def _to_terms(poly: sympy.Poly) -> List[Term]:
    return [
        (Fraction(int(coefficient.p), int(coefficient.q)), monomial)
        for monomial, coefficient in poly.terms()
        if coefficient != 0
    ]


def _evaluate(terms: List[Term], point: Sequence[FieldElement]) -> FieldElement:
    total = point[0] * 0
    for coefficient, monomial in terms:
        value = reduce(lambda acc, pair: acc * pair[0] ** pair[1], zip(point, monomial), coefficient)
        total = total + value
    return total
