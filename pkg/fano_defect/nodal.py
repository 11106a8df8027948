"""
Defect of nodal quartic 3-folds.

The defect of a quartic whose only essential singularities are nodes is
N - rank, where rank is the number of independent conditions the nodes impose
on cubic forms in x0..x4.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import (
    DuplicateNode,
    FanoDefectException,
    MissingPolynomial,
    NegativeBetti,
    NonFiniteMatrix,
    ZeroPoint,
)
from .fields import FieldElement, FieldMode, common_mode, parse_node_file, to_complex, to_mode
from .helpers import get_setting, verify_param
from .polynomial import Quartic, parse_quartic

logger = logging.getLogger(__name__)

SMOOTH_QUARTIC_B3 = 60
HALF_SMOOTH_QUARTIC_B3 = SMOOTH_QUARTIC_B3 // 2
NODE_HESSIAN_RANK = 4
NUM_VARIABLES = 5


def _graded_lex_monomials(degree: int) -> Tuple[Tuple[int, ...], ...]:
    monomials = set()
    for combination in combinations_with_replacement(range(NUM_VARIABLES), degree):
        monomials.add(tuple(combination.count(variable) for variable in range(NUM_VARIABLES)))
    return tuple(sorted(monomials, reverse=True))


# graded-lex with x0 > x1 > x2 > x3 > x4: x0^3, x0^2*x1, ..., x4^3
CUBIC_MONOMIALS = _graded_lex_monomials(3)

Node = Tuple[FieldElement, ...]
_FORBIDDEN_CONVERSIONS = {
    (FieldMode.EISENSTEIN, FieldMode.RATIONAL),
    (FieldMode.FLOAT, FieldMode.RATIONAL),
    (FieldMode.FLOAT, FieldMode.EISENSTEIN),
}
Matrix = List[List[FieldElement]]


@dataclass(frozen=True)
class NodalConfiguration:
    """Nodes of a quartic 3-fold in P4, with the quartic when it is known."""

    nodes: Tuple[Node, ...]
    mode: FieldMode
    quartic: Optional[Quartic] = None

    def __post_init__(self) -> None:
        verify_param(self.mode, 'mode', FieldMode)
        for position, node in enumerate(self.nodes, start=1):
            if len(node) != NUM_VARIABLES:
                raise FanoDefectException(f'node {position} has {len(node)} coordinates, expected {NUM_VARIABLES}')
            if all(_is_zero(value) for value in node):
                raise ZeroPoint(f'node {position} has all coordinates zero')
        for first in range(len(self.nodes)):
            for second in range(first + 1, len(self.nodes)):
                if same_point(self.nodes[first], self.nodes[second]):
                    raise DuplicateNode(f'nodes {first + 1} and {second + 1} are the same point of P4')

    @classmethod
    def build(
        cls,
        nodes: Sequence[Sequence[object]],
        quartic: Optional[Quartic] = None,
        mode: Optional[FieldMode] = None,
    ) -> 'NodalConfiguration':
        """
        Build a configuration, bringing every coordinate into one field.

        :raises MixedFieldModes: If exact and floating point coordinates are mixed.
        """
        detected = common_mode(value for node in nodes for value in node) if nodes else FieldMode.RATIONAL
        mode = mode or detected
        if (detected, mode) in _FORBIDDEN_CONVERSIONS:
            raise FanoDefectException(f'cannot convert {detected.value} coordinates to {mode.value}')
        converted = tuple(tuple(to_mode(value, mode) for value in node) for node in nodes)
        return cls(nodes=converted, mode=mode, quartic=quartic)

    @property
    def count(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class NodalDefect:
    """Result of the cubic-conditions computation."""

    nodes: int
    rank: int
    defect: int
    verified: Optional[bool] = None

    @property
    def assumes_nodal_hypotheses(self) -> bool:
        """True unless the nodes were verified against a quartic."""
        return not self.verified


@dataclass(frozen=True)
class BettiNumbers:
    """Betti numbers of a nodal quartic and of its resolutions."""

    b3: int
    b2_small_resolution: int
    b2_blowup: int


@dataclass(frozen=True)
class NodeReport:
    """Verification of one node against the quartic."""

    node: Node
    on_hypersurface: bool
    critical: bool
    ordinary: bool

    @property
    def passed(self) -> bool:
        return self.on_hypersurface and self.critical and self.ordinary


@dataclass(frozen=True)
class VerificationReport:
    """Verification of all nodes."""

    nodes: Tuple[NodeReport, ...]

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.nodes)

    @property
    def failures(self) -> List[int]:
        """1-based positions of failing nodes."""
        return [position for position, report in enumerate(self.nodes, start=1) if not report.passed]


@dataclass(frozen=True)
class ChartCount:
    """Singular points of the quartic on one affine chart against the listed nodes there."""

    chart: int
    scheme_length: int
    listed: int


@dataclass(frozen=True)
class SingularLocusReport:
    """Whether the listed nodes are the whole singular locus of the quartic."""

    charts: Tuple[ChartCount, ...]

    @property
    def complete(self) -> bool:
        return all(count.scheme_length == count.listed for count in self.charts)



def _is_zero(value: FieldElement, tolerance: Optional[float] = None) -> bool:
    if isinstance(value, float) or isinstance(value, complex):
        return abs(value) <= (tolerance if tolerance is not None else 0.0)
    return value == 0


def same_point(first: Node, second: Node) -> bool:
    """Whether two coordinate vectors define the same point of P4."""
    if isinstance(first[0], (float, complex)):
        a, b = np.array(normalize(first), dtype=complex), np.array(normalize(second), dtype=complex)
        return bool(np.allclose(a, b, rtol=0.0, atol=get_setting('float_rank_tolerance')))
    return all(
        first[i] * second[j] == first[j] * second[i]
        for i in range(NUM_VARIABLES)
        for j in range(i + 1, NUM_VARIABLES)
    )


def normalize(node: Node) -> Node:
    """
    Divide a point by its first nonzero coordinate.

    :raises ZeroPoint: If every coordinate is zero.
    """
    for value in node:
        if not _is_zero(value):
            return tuple(coordinate / value for coordinate in node)
    raise ZeroPoint('point has all coordinates zero')


def cubic_condition_matrix(cfg: NodalConfiguration) -> Matrix:
    """
    Evaluate the 35 cubic monomials at the normalized nodes.

    :param cfg: The configuration.
    :return: An N x 35 matrix, columns in graded-lex order with x0 > ... > x4.
    :raises ZeroPoint: If a node has all coordinates zero.
    """
    verify_param(cfg, 'cfg', NodalConfiguration)
    matrix = []
    for node in cfg.nodes:
        point = normalize(node)
        row = []
        for monomial in CUBIC_MONOMIALS:
            value = point[0] ** 0
            for coordinate, exponent in zip(point, monomial):
                if exponent:
                    value = value * coordinate ** exponent
            row.append(value)
        matrix.append(row)
    return matrix


def exact_rank(matrix: Sequence[Sequence[FieldElement]]) -> int:
    """
    Rank over an exact field by fraction-free (Bareiss) elimination.

    :param matrix: Rows of Fraction or EisensteinNumber entries.
    :return: The rank.
    """
    rows = [list(row) for row in matrix]
    if not rows or not rows[0]:
        return 0
    height, width = len(rows), len(rows[0])
    rank, previous = 0, 1
    for column in range(width):
        pivot = next((index for index in range(rank, height) if rows[index][column] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pivot_value = rows[rank][column]
        for index in range(rank + 1, height):
            factor = rows[index][column]
            for inner in range(column + 1, width):
                rows[index][inner] = (pivot_value * rows[index][inner] - factor * rows[rank][inner]) / previous
            rows[index][column] = 0
        previous = pivot_value
        rank += 1
        if rank == height:
            break
    return rank


def float_rank(matrix: Sequence[Sequence[FieldElement]], tolerance: Optional[float] = None) -> int:
    """
    Numerical rank from singular values.

    :param matrix: Rows of entries embeddable in the complex numbers.
    :param tolerance: Relative threshold against the largest singular value.
    :return: The number of singular values above the threshold.
    :raises NonFiniteMatrix: If an entry is infinite or NaN.
    """
    if tolerance is None:
        tolerance = get_setting('float_rank_tolerance')
    if not len(matrix) or not len(matrix[0]):
        return 0
    array = np.array([[to_complex(value) for value in row] for row in matrix], dtype=complex)
    if not np.isfinite(array).all():
        raise NonFiniteMatrix('Matrix has non-finite entries; rescale the coordinates')
    singular_values = np.linalg.svd(array, compute_uv=False)
    if singular_values[0] == 0:
        return 0
    return int(np.sum(singular_values > tolerance * singular_values[0]))


def matrix_rank(matrix: Sequence[Sequence[FieldElement]], mode: FieldMode, tolerance: Optional[float] = None) -> int:
    """Exact rank in exact modes, singular-value rank in float mode."""
    if mode.exact:
        return exact_rank(matrix)
    return float_rank(matrix, tolerance)


def nodal_defect(cfg: NodalConfiguration, tolerance: Optional[float] = None) -> NodalDefect:
    """
    Defect of the quartic with the given nodes.

    :param cfg: The configuration.
    :param tolerance: Float-mode rank tolerance, `float_rank_tolerance` by default.
    :return: Node count, rank of the cubic conditions and defect N - rank.
    """
    matrix = cubic_condition_matrix(cfg)
    rank = matrix_rank(matrix, cfg.mode, tolerance)
    result = NodalDefect(nodes=cfg.count, rank=rank, defect=cfg.count - rank)
    logger.info(f'{cfg.count} nodes impose {rank} conditions on cubics, defect {result.defect}')
    return result


def defect_lower_bound(n: int) -> int:
    """
    Lower bound on the defect of a quartic with n nodes.

    :return: max(0, n - 30).
    """
    verify_param(n, 'N', int)
    if n < 0:
        raise FanoDefectException(f'Node count must be non-negative, got {n}')
    return max(0, n - HALF_SMOOTH_QUARTIC_B3)


def betti_bookkeeping(n: int, sigma: int, b2_y: int) -> BettiNumbers:
    """
    Betti numbers of a nodal quartic and of its small resolution and blow-up.

    :param n: Number of nodes.
    :param sigma: Defect.
    :param b2_y: b2 of the quartic.
    :return: b3(Y) = 60 + sigma - N, b2 of the small resolution b2(Y) + sigma and of the blow-up at the nodes.
    :raises NegativeBetti: If b3(Y) would be negative.
    """
    for value, name in ((n, 'N'), (sigma, 'sigma'), (b2_y, 'b2Y')):
        verify_param(value, name, int)
        if value < 0:
            raise FanoDefectException(f'{name} must be non-negative, got {value}')
    b3 = SMOOTH_QUARTIC_B3 + sigma - n
    if b3 < 0:
        raise NegativeBetti(f'b3(Y) = 60 + {sigma} - {n} is negative')
    small = b2_y + sigma
    return BettiNumbers(b3=b3, b2_small_resolution=small, b2_blowup=small + n)


def weil_rank(n: int, sigma: int, b2_y: int) -> int:
    """Rank of the Weil group, equal to b2 of a small resolution."""
    return betti_bookkeeping(n, sigma, b2_y).b2_small_resolution


def defect_from_resolution(b3_tilde: int, b3_y: int, sigma_an_sum: int) -> int:
    """
    Defect from the Betti numbers of a resolution and the local analytic defects.

    :return: b3_tilde - b3_y + sigma_an_sum.
    """
    for value, name in ((b3_tilde, 'b3_tilde'), (b3_y, 'b3Y'), (sigma_an_sum, 'sigma_an_sum')):
        verify_param(value, name, int)
        if value < 0:
            raise FanoDefectException(f'{name} must be non-negative, got {value}')
    return b3_tilde - b3_y + sigma_an_sum


def verify_nodes(cfg: NodalConfiguration, tolerance: Optional[float] = None) -> VerificationReport:
    """
    Check that every node is an ordinary double point of the quartic.

    :param cfg: A configuration with a quartic.
    :param tolerance: Float-mode tolerance for values and ranks.
    :return: Per-node results.
    :raises MissingPolynomial: If the configuration has no quartic.
    """
    if cfg.quartic is None:
        raise MissingPolynomial('node verification requires a quartic')
    if tolerance is None:
        tolerance = get_setting('float_rank_tolerance')
    value_tolerance = None if cfg.mode.exact else tolerance
    reports = []
    for node in cfg.nodes:
        point = normalize(node)
        on_hypersurface = _is_zero(_complex_if_float(cfg.quartic.evaluate(point), cfg.mode), value_tolerance)
        critical = all(
            _is_zero(_complex_if_float(value, cfg.mode), value_tolerance) for value in cfg.quartic.gradient(point)
        )
        hessian_rank = matrix_rank(cfg.quartic.hessian(point), cfg.mode, tolerance)
        reports.append(NodeReport(
            node=node,
            on_hypersurface=on_hypersurface,
            critical=critical,
            ordinary=hessian_rank == NODE_HESSIAN_RANK,
        ))
    report = VerificationReport(nodes=tuple(reports))
    if not report.passed:
        logger.warning(f'{len(report.failures)} of {cfg.count} nodes failed verification')
    return report


def verify_singular_locus(cfg: NodalConfiguration, tolerance: Optional[float] = None) -> SingularLocusReport:
    """
    Check that the quartic has no singular points besides the listed nodes.

    On each chart x_k = 1 the length of the gradient scheme is compared with the number of
    listed nodes with x_k != 0. Once `verify_nodes` passes, every listed node adds exactly 1
    to that length, so equality on all five charts leaves no room for other singular points.

    :param cfg: A configuration with a quartic.
    :param tolerance: Float-mode tolerance for zero coordinates.
    :return: Per-chart counts.
    :raises MissingPolynomial: If the configuration has no quartic.
    :raises PositiveDimensionalSingularLocus: If the quartic is singular along a curve or more.
    """
    if cfg.quartic is None:
        raise MissingPolynomial('singular locus check requires a quartic')
    value_tolerance = None if cfg.mode.exact else (tolerance or get_setting('float_rank_tolerance'))
    charts = []
    for chart in range(NUM_VARIABLES):
        listed = sum(
            1 for node in cfg.nodes
            if not _is_zero(_complex_if_float(node[chart], cfg.mode), value_tolerance)
        )
        charts.append(ChartCount(chart=chart, scheme_length=cfg.quartic.singular_scheme_length(chart), listed=listed))
    report = SingularLocusReport(charts=tuple(charts))
    if not report.complete:
        logger.warning(f'listed nodes do not exhaust the singular locus: {report.charts}')
    return report


def _complex_if_float(value: FieldElement, mode: FieldMode) -> FieldElement:
    return value if mode.exact else to_complex(value)


def transform_nodes(cfg: NodalConfiguration, matrix: Sequence[Sequence[int]]) -> NodalConfiguration:
    """
    Apply a linear change of coordinates of P4 to every node.

    :param cfg: The configuration.
    :param matrix: An invertible 5x5 integer matrix.
    :return: The transformed configuration, without a quartic.
    """
    nodes = []
    for node in cfg.nodes:
        zero = node[0] * 0
        nodes.append(tuple(
            sum((node[column] * int(matrix[row][column]) for column in range(NUM_VARIABLES)), zero)
            for row in range(NUM_VARIABLES)
        ))
    return NodalConfiguration(nodes=tuple(nodes), mode=cfg.mode)


def random_linear_change(seed: int, bound: int = 3) -> List[List[int]]:
    """
    A random invertible 5x5 integer matrix with entries in [-bound, bound].

    :param seed: Seed for `numpy.random.default_rng`.
    """
    rng = np.random.default_rng(seed)
    while True:
        candidate = rng.integers(-bound, bound + 1, size=(NUM_VARIABLES, NUM_VARIABLES)).tolist()
        if exact_rank([[Fraction(value) for value in row] for row in candidate]) == NUM_VARIABLES:
            return candidate


def load_configuration(
    nodes_path: Union[str, Path],
    quartic_path: Optional[Union[str, Path]] = None,
    mode: Optional[FieldMode] = None,
) -> NodalConfiguration:
    """
    Read a node file and, optionally, a quartic file.

    :param nodes_path: The node file.
    :param quartic_path: The quartic file.
    :param mode: Field to convert the nodes to, the header field by default.
    :raises NodeFileError: On a malformed node file.
    :raises DuplicateNode: If two nodes are the same point.
    :raises PolynomialSyntaxError: On a malformed quartic.
    """
    nodes_path = Path(nodes_path)
    header_mode, nodes = parse_node_file(nodes_path.read_text(encoding='utf-8'), source=str(nodes_path))
    quartic = None
    if quartic_path is not None:
        quartic_path = Path(quartic_path)
        quartic = parse_quartic(quartic_path.read_text(encoding='utf-8'), source=str(quartic_path))
    return NodalConfiguration.build(nodes, quartic=quartic, mode=mode or header_mode)
