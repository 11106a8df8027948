"""
Numerical Sarkisov links through a Fano 3-fold Y of Picard rank 1 and index 1.

A link is a pair (ψ, α): ψ blows a curve Γ on Z1 up to Z, the small
Q-factorialisation of Y is flopped to Z~, and α contracts Z~ in one of three
ways. The unknowns are the coefficients of the α-side divisor
L = x(-K~) - yE~ (or D for a divisorial α), the flop defect e and, for a
divisorial α, k with x + 1 = yk. Every equation is produced by
`intersection.triple_product`.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Callable, List, Optional, Tuple

from .classification import FanoDescriptor, FanoKind, all_rank_one_targets, h21_cap
from .exceptions import FanoDefectException, SearchCapExceeded
from .helpers import exact_quotient, get_setting, integer_roots, verify_genus, verify_param
from .intersection import (
    ANTICANONICAL,
    EXCEPTIONAL,
    BlowdownData,
    CurveInvariants,
    e1_table,
    quadratic_coefficients,
    solve_flop_defect,
    triple_product,
)

logger = logging.getLogger(__name__)

CONIC_BUNDLE_Y = (1, 2)
DEL_PEZZO_Y = (1, 2, 3)
DEL_PEZZO_DEGREES = range(3, 10)
FIBRE_RULES = ('derived', 'printed')


class AlphaKind(Enum):
    """Kinds of the second extremal contraction of a link."""

    DIVISORIAL = 'e1'
    CONIC_BUNDLE = 'cb'
    DEL_PEZZO = 'dp'


@dataclass(frozen=True)
class AlphaContraction:
    """The α-side contraction and its invariants."""

    kind: AlphaKind
    delta_deg: Optional[int] = None
    d: Optional[int] = None
    target: Optional[FanoDescriptor] = None
    curve: Optional[CurveInvariants] = None

    def __post_init__(self) -> None:
        if self.kind is AlphaKind.CONIC_BUNDLE:
            if self.delta_deg is None or not 0 <= self.delta_deg < 12:
                raise FanoDefectException(f'Invalid discriminant degree: {self.delta_deg}')
        elif self.kind is AlphaKind.DEL_PEZZO:
            if self.d not in DEL_PEZZO_DEGREES:
                raise FanoDefectException(f'Invalid del Pezzo degree: {self.d}')
        else:
            verify_param(self.target, 'target', FanoDescriptor)
            verify_param(self.curve, 'curve', CurveInvariants)

    @classmethod
    def conic_bundle(cls, delta_deg: int) -> 'AlphaContraction':
        return cls(AlphaKind.CONIC_BUNDLE, delta_deg=delta_deg)

    @classmethod
    def del_pezzo(cls, d: int) -> 'AlphaContraction':
        return cls(AlphaKind.DEL_PEZZO, d=d)

    @classmethod
    def divisorial(cls, target: FanoDescriptor, curve: CurveInvariants) -> 'AlphaContraction':
        return cls(AlphaKind.DIVISORIAL, target=target, curve=curve)

    @property
    def label(self) -> str:
        """Target of α, or the base of the fibration."""
        if self.kind is AlphaKind.CONIC_BUNDLE:
            return 'P2'
        if self.kind is AlphaKind.DEL_PEZZO:
            return 'P1'
        return self.target.name

    @property
    def description(self) -> str:
        if self.kind is AlphaKind.CONIC_BUNDLE:
            return f'Conic bundle, deg(Delta)={self.delta_deg}'
        if self.kind is AlphaKind.DEL_PEZZO:
            return f'Del Pezzo fibration of degree {self.d}'
        return f'E1, pa(C)={self.curve.pa}, deg(C)={self.curve.deg}'

    @property
    def sort_key(self) -> tuple:
        order = list(AlphaKind).index(self.kind)
        if self.kind is AlphaKind.DIVISORIAL:
            return (order, psi_group_key(self.target), self.curve.pa, self.curve.deg)
        return (order, (0, 0), self.delta_deg or 0, self.d or 0)


@dataclass(frozen=True)
class LinkSolution:
    """One numerically admissible (ψ, α) configuration."""

    g: int
    psi: BlowdownData
    x: int
    y: int
    k: Optional[int]
    e: int
    alpha: AlphaContraction
    max_deg_f: int
    hodge_feasible: bool

    @property
    def divisor(self) -> Tuple[int, int]:
        """L (fibrations) or D (divisorial α) in the (-K~, E~) basis."""
        return (self.x, -self.y)

    @property
    def sort_key(self) -> tuple:
        return (
            psi_group_key(self.psi.target),
            self.psi.curve.pa,
            self.psi.curve.deg,
            self.alpha.sort_key,
            self.x,
            self.y,
            self.e,
        )


def psi_group_key(target: FanoDescriptor) -> Tuple[int, int]:
    """
    Grouping of ψ targets: index 1 by degree descending, then V1..V5, then Q and P3.
    """
    if target.kind is FanoKind.INDEX_ONE:
        return (0, -target.anticanonical_degree)
    if target.kind is FanoKind.INDEX_TWO:
        return (1, target.parameter)
    return (target.index, 0)


def _check_cap(value: int, name: str) -> None:
    cap = get_setting('search_safety_cap')
    if abs(value) > cap:
        raise SearchCapExceeded(f'{name}={value} exceeds the safety cap {cap}')


def _surface_degree(psi: BlowdownData, divisor: Tuple[int, int]) -> int:
    """(-K~)^2 . divisor, independent of the flop."""
    return triple_product(psi, 1, ANTICANONICAL, ANTICANONICAL, divisor)


def _hodge_intervals_meet(psi: BlowdownData, alpha: AlphaContraction) -> bool:
    if alpha.kind is not AlphaKind.DIVISORIAL:
        return True
    low = max(psi.curve.pa, alpha.curve.pa)
    high = min(psi.curve.pa + h21_cap(psi.target), alpha.curve.pa + h21_cap(alpha.target))
    return low <= high


def enumerate_psi(g: int) -> List[BlowdownData]:
    """
    Return every admissible E1 blow-down of a genus-g Fano 3-fold.

    :param g: The genus of Y.
    :return: Validated tables in target order, then by arithmetic genus.
    :raises GenusOutOfRange: If g is not a valid genus of at least 3.
    """
    verify_genus(g)
    k3 = 2 * g - 2
    tables = []
    for target in all_rank_one_targets():
        if target.anticanonical_degree <= k3:
            continue
        # target degree = k3 + 2(A + 1 - pa), so A - pa is fixed
        a_minus_pa = (target.anticanonical_degree - k3) // 2 - 1
        for deg in range(1, target.anticanonical_degree // target.index + 1):
            pa = target.index * deg - a_minus_pa
            if pa < 0:
                continue
            if target.index * deg + 2 - 2 * pa <= 0:
                break
            tables.append(e1_table(g, target, CurveInvariants(pa=pa, deg=deg)))
    tables.sort(key=lambda table: (psi_group_key(table.target), table.curve.pa))
    logger.debug(f'{len(tables)} blow-downs for genus {g}')
    return tables


def _make_solution(
    psi: BlowdownData,
    x: int,
    y: int,
    k: Optional[int],
    e: int,
    alpha: AlphaContraction,
) -> LinkSolution:
    max_deg = psi.k2e
    if alpha.kind is AlphaKind.DIVISORIAL:
        max_deg = min(psi.k2e, _surface_degree(psi, (x, -y)))
    return LinkSolution(
        g=psi.g,
        psi=psi,
        x=x,
        y=y,
        k=k,
        e=e,
        alpha=alpha,
        max_deg_f=max_deg,
        hodge_feasible=_hodge_intervals_meet(psi, alpha),
    )


def solve_conic_bundle(psi: BlowdownData) -> List[LinkSolution]:
    """
    Solve for links where α is a conic bundle over P2.

    L^2.(-K~) = 2, L^3 = 0 and L.(-K~)^2 = 12 - deg(Delta).

    :param psi: The ψ-side table.
    :return: The admissible solutions.
    """
    solutions = []
    for y in CONIC_BUNDLE_Y:
        a, b, c = quadratic_coefficients(
            lambda x, y=y: triple_product(psi, 1, (x, -y), (x, -y), ANTICANONICAL)
        )
        for x in integer_roots(a, b, c - 2):
            _check_cap(x, 'x')
            if x < 1 or gcd(x, y) != 1:
                continue
            divisor = (x, -y)
            e = solve_flop_defect(psi, divisor, divisor, divisor)
            if e is None or e < 1:
                logger.debug(f'conic bundle candidate x={x}, y={y} over {psi.target} rejected, e={e}')
                continue
            fibre_degree = _surface_degree(psi, divisor)
            if fibre_degree <= 0 or fibre_degree > 12:
                continue
            solutions.append(_make_solution(psi, x, y, None, e, AlphaContraction.conic_bundle(12 - fibre_degree)))
    return solutions


def _derived_fibre_defect(psi: BlowdownData, x: int, y: int) -> Optional[int]:
    return solve_flop_defect(psi, (x, -y), (x, -y), EXCEPTIONAL)


def _printed_fibre_defect(psi: BlowdownData, x: int, y: int) -> Optional[int]:
    # the printed line reads k2e - 2xy.ke2 + y^2(e3 - e) = 0, without x^2 on the first term
    return exact_quotient(psi.k2e - 2 * x * y * psi.ke2 + y * y * psi.e3, y * y)


FIBRE_DEFECT_RULES: dict = {
    'derived': _derived_fibre_defect,
    'printed': _printed_fibre_defect,
}


def del_pezzo_candidates(psi: BlowdownData, fibre_rule: str = 'derived') -> List[Tuple[int, int, Optional[int], int]]:
    """
    Return (x, y, e, d) for every coprime solution of L^2.(-K~) = 0, before e and d are checked.
    """
    if fibre_rule not in FIBRE_DEFECT_RULES:
        raise FanoDefectException(f'Unknown fibre rule: {fibre_rule}')
    candidates = []
    for y in DEL_PEZZO_Y:
        a, b, c = quadratic_coefficients(
            lambda x, y=y: triple_product(psi, 1, (x, -y), (x, -y), ANTICANONICAL)
        )
        for x in integer_roots(a, b, c):
            _check_cap(x, 'x')
            if x < 1 or gcd(x, y) != 1:
                continue
            e = FIBRE_DEFECT_RULES[fibre_rule](psi, x, y)
            candidates.append((x, y, e, _surface_degree(psi, (x, -y))))
    return candidates


def solve_del_pezzo(psi: BlowdownData, fibre_rule: str = 'derived') -> List[LinkSolution]:
    """
    Solve for links where α is a del Pezzo fibration over P1.

    L^2.(-K~) = 0, L^2.E~ = 0 and L.(-K~)^2 = d with 3 <= d <= 9.

    :param psi: The ψ-side table.
    :param fibre_rule: 'derived' solves L^2.E~ = 0; 'printed' replays the published form.
    :return: The admissible solutions.
    """
    solutions = []
    for x, y, e, d in del_pezzo_candidates(psi, fibre_rule):
        if e is None or e < 1 or d not in DEL_PEZZO_DEGREES:
            logger.debug(f'del Pezzo candidate x={x}, y={y} over {psi.target} rejected, e={e}, d={d}')
            continue
        solutions.append(_make_solution(psi, x, y, None, e, AlphaContraction.del_pezzo(d)))
    return solutions


def solve_divisorial(psi: BlowdownData) -> List[LinkSolution]:
    """
    Solve for links where α is an E1 contraction onto a Fano 3-fold of Picard rank 1.

    With y the index of the target and x + 1 = yk, -K~ + D = (yk, -y) is the pull-back of -K of the target.

    :param psi: The ψ-side table.
    :return: The admissible solutions.
    """
    solutions = []
    for target in all_rank_one_targets():
        y = target.index
        a, b, c = quadratic_coefficients(
            lambda k, y=y: triple_product(psi, 1, (y * k, -y), (y * k, -y), ANTICANONICAL)
        )
        for k in integer_roots(a, b, c - target.anticanonical_degree):
            _check_cap(k, 'k')
            x = y * k - 1
            if k < 1 or x < 1 or gcd(x, y) != 1:
                continue
            pullback, divisor = (y * k, -y), (x, -y)
            e = solve_flop_defect(psi, pullback, pullback, divisor)
            if e is None or e < 1:
                logger.debug(f'divisorial candidate k={k} onto {target} over {psi.target} rejected, e={e}')
                continue
            twice_pa_minus_two = triple_product(psi, e, divisor, divisor, ANTICANONICAL)
            curve_degree = triple_product(psi, e, (k, -1), divisor, ANTICANONICAL)
            if twice_pa_minus_two % 2 or twice_pa_minus_two < -2 or curve_degree < 1:
                continue
            curve = CurveInvariants(pa=(twice_pa_minus_two + 2) // 2, deg=curve_degree)
            try:
                e1_table(psi.g, target, curve)
            except FanoDefectException as exc:
                logger.debug(f'divisorial candidate onto {target} rejected: {exc}')
                continue
            solutions.append(_make_solution(psi, x, y, k, e, AlphaContraction.divisorial(target, curve)))
    return solutions


def hodge_filter(sol: LinkSolution) -> bool:
    """
    Return whether both sides of a divisorial link can realize the same h^{2,1}(Z).

    h^{2,1}(Z) = h^{2,1}(Z1) + pa(Gamma) = h^{2,1}(Z~1) + pa(C), with each
    h^{2,1}(Z1) between 0 and the smooth value.

    :param sol: The solution.
    :return: False when the two admissible intervals are disjoint.
    """
    return _hodge_intervals_meet(sol.psi, sol.alpha)


def max_deg_f(sol: LinkSolution) -> int:
    """
    Return the degree bound of the surface F witnessing non-Q-factoriality.

    :param sol: The solution.
    :return: (-K)^2.E, or the smaller of (-K)^2.E and (-K~)^2.D for a divisorial α.
    """
    if sol.alpha.kind is AlphaKind.DIVISORIAL:
        return min(sol.psi.k2e, _surface_degree(sol.psi, sol.divisor))
    return sol.psi.k2e


def surface_degree_alpha(sol: LinkSolution) -> Optional[int]:
    """(-K~)^2.D for a divisorial α, None for fibrations."""
    if sol.alpha.kind is not AlphaKind.DIVISORIAL:
        return None
    return _surface_degree(sol.psi, sol.divisor)


def check_solution(sol: LinkSolution) -> List[str]:
    """
    Re-check the structural invariants of a solution independently of the solver.

    :param sol: The solution.
    :return: Human readable violations, empty when the solution is sound.
    """
    violations = []
    if sol.x < 1 or sol.y < 1 or gcd(sol.x, sol.y) != 1:
        violations.append(f'x={sol.x}, y={sol.y} must be positive and coprime')
    if sol.e < 1:
        violations.append(f'e={sol.e} must be positive')
    if sol.max_deg_f < 1:
        violations.append(f'max deg F={sol.max_deg_f} must be positive')
    if sol.alpha.kind is AlphaKind.CONIC_BUNDLE and sol.y not in CONIC_BUNDLE_Y:
        violations.append(f'conic bundle with y={sol.y}')
    if sol.alpha.kind is AlphaKind.DEL_PEZZO and sol.y not in DEL_PEZZO_Y:
        violations.append(f'del Pezzo fibration with y={sol.y}')
    if sol.alpha.kind is AlphaKind.DIVISORIAL:
        if sol.y != sol.alpha.target.index:
            violations.append(f'y={sol.y} differs from the index of {sol.alpha.target}')
        if sol.k is None or sol.y * sol.k != sol.x + 1:
            violations.append(f'y*k={sol.y}*{sol.k} differs from x+1={sol.x + 1}')
    return violations


def printed_del_pezzo_residual(sol: LinkSolution) -> int:
    """
    Residual of the published second del Pezzo equation at the solution.

    It vanishes only when x = 1, since the published form lacks x^2 on its first term.
    """
    psi = sol.psi
    return psi.k2e - 2 * sol.x * sol.y * psi.ke2 + sol.y ** 2 * (psi.e3 - sol.e)


def printed_divisorial_lines(sol: LinkSolution) -> Tuple[int, int, int, int]:
    """
    Residuals (left minus right) of the four published divisorial equations.
    """
    psi, x, y, k, e = sol.psi, sol.x, sol.y, sol.k, sol.e
    target, curve = sol.alpha.target, sol.alpha.curve
    k3, k2e, ke2 = psi.k3, psi.k2e, psi.ke2
    line_1 = y * y * (k3 * k * k - 2 * k2e * k + ke2) - target.anticanonical_degree
    line_2 = (
        k3 * k * k * (y * k - 1) + k2e * (2 * k - 3 * k * k * y)
        + ke2 * (3 * k * y - 1) + (psi.A - 2 + 2 * psi.curve.pa + e) * y
    )
    # the published right-hand side is (i/y) deg C, and y is the index
    line_3 = k3 * k * x - k2e * (2 * y * k - 1) + ke2 * y - (target.index // y) * curve.deg
    line_4 = k3 * x * x - 2 * k2e * y * x + ke2 * y * y - (2 * curve.pa - 2)
    return line_1, line_2, line_3, line_4


def enumerate_links(
    g: int,
    apply_hodge: bool,
    fibre_rule: str = 'derived',
    hodge_predicate: Optional[Callable[[LinkSolution], bool]] = None,
) -> List[LinkSolution]:
    """
    Return every numerically admissible link through a genus-g Fano 3-fold, canonically ordered.

    :param g: The genus of Y.
    :param apply_hodge: Drop solutions rejected by the Hodge filter.
    :param fibre_rule: Rule used for the second del Pezzo equation.
    :param hodge_predicate: Replacement for `hodge_filter`.
    :return: The solutions.
    :raises GenusOutOfRange: If g is not a valid genus of at least 3.
    """
    verify_genus(g)
    verify_param(apply_hodge, 'apply_hodge', bool)
    predicate = hodge_predicate or hodge_filter

    found = set()
    for psi in enumerate_psi(g):
        found.update(solve_conic_bundle(psi))
        found.update(solve_del_pezzo(psi, fibre_rule))
        found.update(solve_divisorial(psi))

    solutions = sorted((sol for sol in found if sol.e >= 1), key=lambda sol: sol.sort_key)
    if apply_hodge:
        solutions = [sol for sol in solutions if predicate(sol)]
    logger.info(f'enumerated {len(solutions)} link solutions for genus {g} (hodge filter: {apply_hodge})')
    return solutions
