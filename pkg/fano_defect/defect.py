"""
Defect bounds for terminal Gorenstein Fano 3-folds of Picard rank 1.

The closed forms come with a search that replays the Minimal Model Program
on a small Q-factorialisation as degree bookkeeping: a run is a sequence of
divisorial contractions between states (Fano index, -K^3) followed by an end
product, and the defect is (#contractions) + rank(end product) - 1.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .classification import INDEX_ONE_GENERA, INDEX_TWO_DEGREES
from .exceptions import DegreeOutOfRange, FanoDefectException, FibreBudgetExceeded, SearchCapExceeded
from .helpers import VALID_GENERA, get_setting, verify_genus, verify_param
from .intersection import ContractionKind, degree_jump

logger = logging.getLogger(__name__)

QUARTIC_GENUS = 3
MAX_REDUCIBLE_FIBRES = 4
QUADRIC_DEGREE = 54
PROJ_SPACE_DEGREE = 64
INDEX_ONE_DEGREES = tuple(2 * genus - 2 for genus in INDEX_ONE_GENERA)


class BoundScenario(Enum):
    """Which bound a result describes."""

    NO_PLANE_NO_QUADRIC = 'no_plane_no_quadric'
    QUADRIC_NO_PLANE = 'quadric_no_plane'
    PLANE_QUARTIC = 'plane_quartic'
    INDEX_TWO = 'index_two'


class Containment(Enum):
    """Special surfaces a quartic 3-fold may contain."""

    NONE = 'none'
    QUADRIC = 'quadric'
    PLANE = 'plane'


class StepKind(Enum):
    """Divisorial contractions of the search."""

    GENERIC = 'generic'
    QUADRIC = 'quadric'
    E2 = 'e2'
    ENDPOINT = 'endpoint'


class EndProduct(Enum):
    """End products of the Minimal Model Program with their Picard rank."""

    RANK_ONE_FANO = ('rank-one Fano', 1)
    DEL_PEZZO_FIBRATION = ('del Pezzo fibration over P1', 2)
    CONIC_BUNDLE_P2 = ('conic bundle over P2', 2)
    CONIC_BUNDLE_F0_F2 = ('conic bundle over F0 or F2', 3)

    def __init__(self, label: str, rank: int) -> None:
        self.label = label
        self.rank = rank


@dataclass(frozen=True)
class MmpState:
    """Fano index and anticanonical degree of an intermediate 3-fold."""

    index: int
    degree: int

    @property
    def label(self) -> str:
        if self.index == 1:
            return f'X{self.degree}'
        if self.index == 2:
            return f'V{self.degree // 8}'
        return 'Q' if self.index == 3 else 'P3'


@dataclass(frozen=True)
class ContractionStep:
    """One divisorial contraction of a witness run."""

    kind: StepKind
    before: MmpState
    after: MmpState

    @property
    def sort_key(self) -> tuple:
        return (list(StepKind).index(self.kind), self.after.index, self.after.degree)

    def __str__(self) -> str:
        return f'{self.kind.value}: {self.before.label} -> {self.after.label}'


@dataclass(frozen=True)
class Witness:
    """
    Bookkeeping that realizes a bound.

    The steps and the end product are separate terms of the count. The steps are divisorial
    contractions from the start; the end product is the largest Mori fibre space term allowed
    at any stage and need not sit over the state the last step reaches. A witness is therefore
    not a literal Minimal Model Program run.
    """

    start: MmpState
    steps: Tuple[ContractionStep, ...]
    end_product: EndProduct

    @property
    def defect(self) -> int:
        return len(self.steps) + self.end_product.rank - 1

    @property
    def accounting(self) -> str:
        """The defect as a sum, for example `2 steps + rank 3 - 1 = 4`."""
        return f'{len(self.steps)} steps + rank {self.end_product.rank} - 1 = {self.defect}'


@dataclass(frozen=True)
class DefectBoundResult:
    """A defect bound together with the data that produced it."""

    scenario: BoundScenario
    bound: int
    parameter: Optional[int] = None
    witness: Optional[Witness] = None
    closed_form: Optional[int] = None
    rank_cap: Optional[int] = None
    max_e2_steps: Optional[int] = None
    max_disjoint_planes: Optional[int] = None
    maximizer: Optional[Tuple[int, int]] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise FanoDefectException(f'Defect bound must be non-negative, got {self.bound}')

    @property
    def exceeds_closed_form(self) -> bool:
        return self.closed_form is not None and self.bound > self.closed_form


def bound_no_quadric(g: int) -> DefectBoundResult:
    """
    Bound on the defect when Y contains neither a plane nor a quadric.

    :param g: The genus of Y.
    :return: floor((12 - g) / 2) + 4.
    :raises GenusOutOfRange: If g is not a valid genus of at least 3.
    """
    verify_genus(g)
    bound = (12 - g) // 2 + 4
    return DefectBoundResult(BoundScenario.NO_PLANE_NO_QUADRIC, bound, parameter=g, closed_form=bound)


def bound_with_quadric(g: int) -> DefectBoundResult:
    """
    Bound on the defect when Y contains a quadric but no plane.

    :param g: The genus of Y.
    :return: 14 - g.
    :raises GenusOutOfRange: If g is not a valid genus of at least 3.
    """
    verify_genus(g)
    bound = 14 - g
    return DefectBoundResult(BoundScenario.QUADRIC_NO_PLANE, bound, parameter=g, closed_form=bound)


def max_disjoint_planes(h3: int) -> int:
    """
    Maximal number of disjoint planes on a small Q-factorialisation of an index-2 Y.

    :param h3: The degree H^3.
    :return: 7 - h3.
    :raises DegreeOutOfRange: If h3 is not in 1..5.
    """
    _verify_h3(h3)
    return 7 - h3


def bound_index_two(h3: int) -> DefectBoundResult:
    """
    Bound on the defect of a Fano 3-fold of index 2 and degree h3.

    The Picard rank of a small Q-factorialisation is at most 8 - h3, every divisorial
    contraction is an E2 raising h3 by one.

    :param h3: The degree H^3.
    :return: The result, carrying the rank cap, the E2 budget and a witness run.
    :raises DegreeOutOfRange: If h3 is not in 1..5.
    """
    _verify_h3(h3)
    rank_cap = 8 - h3
    witness = _search(MmpState(2, 8 * h3), quadric_budget=0)
    return DefectBoundResult(
        BoundScenario.INDEX_TWO,
        rank_cap - 1,
        parameter=h3,
        witness=witness,
        closed_form=rank_cap - 1,
        rank_cap=rank_cap,
        max_e2_steps=max(INDEX_TWO_DEGREES) - h3,
        max_disjoint_planes=max_disjoint_planes(h3),
    )


def weil_rank_del_pezzo3(three_component: int, two_component: int) -> int:
    """
    Bound on the Weil rank of the cubic fibration obtained by blowing up a plane on a quartic.

    :param three_component: N, reducible fibres with three components.
    :param two_component: M, reducible fibres with two components.
    :return: 8 + 2N + M.
    :raises FibreBudgetExceeded: If N + M > 4.
    """
    verify_param(three_component, 'N', int)
    verify_param(two_component, 'M', int)
    if three_component < 0 or two_component < 0:
        raise FanoDefectException(f'Fibre counts must be non-negative, got N={three_component}, M={two_component}')
    if three_component + two_component > MAX_REDUCIBLE_FIBRES:
        raise FibreBudgetExceeded(
            f'At most {MAX_REDUCIBLE_FIBRES} reducible fibres, got N={three_component}, M={two_component}'
        )
    return 8 + 2 * three_component + two_component


def bound_plane_quartic() -> DefectBoundResult:
    """
    Bound on the defect of a terminal Gorenstein quartic containing a plane.

    :return: The maximum of 7 + 2N + M over admissible fibre counts, with its maximizer.
    """
    candidates = [
        (weil_rank_del_pezzo3(n, m) - 1, (n, m))
        for n in range(MAX_REDUCIBLE_FIBRES + 1)
        for m in range(MAX_REDUCIBLE_FIBRES + 1 - n)
    ]
    bound, maximizer = max(candidates, key=lambda item: (item[0], item[1]))
    return DefectBoundResult(
        BoundScenario.PLANE_QUARTIC,
        bound,
        parameter=QUARTIC_GENUS,
        closed_form=bound,
        maximizer=maximizer,
        notes=('attained by the Burkhardt quartic, Weil rank 16',),
    )


def main_theorem(contains: Containment) -> DefectBoundResult:
    """
    Bound on the defect of a terminal Gorenstein quartic 3-fold.

    :param contains: The special surfaces the quartic is known to contain.
    :return: 8, 11 or 15.
    """
    verify_param(contains, 'contains', Containment)
    if contains is Containment.PLANE:
        return bound_plane_quartic()
    if contains is Containment.QUADRIC:
        return bound_with_quadric(QUARTIC_GENUS)
    return bound_no_quadric(QUARTIC_GENUS)


def quadric_step_budget(g: int) -> int:
    """
    Number of quadric contractions accounted for by the quadric bound.

    With q front-loaded quadric steps the search reaches q + floor((12 - g - q) / 2) + 4,
    which equals 14 - g at q = 9 - g.
    """
    return max(0, 9 - g)


def search_bound(g: int, allow_quadrics: bool, quadric_budget: Optional[int] = None) -> DefectBoundResult:
    """
    Exhaustively search contraction sequences starting from a genus-g Fano 3-fold.

    Transitions from index 1 are generic steps (+4 or more, landing on an index-1 degree),
    E2 steps (+8, landing on an index-2 degree), and steps onto the quadric or P3.
    The quadric may be followed by P3. Index 2 only continues by E2 steps. Quadric
    steps (+2 or more) are only taken before any other step. Every state may end the
    run with any end product.

    :param g: The genus of Y.
    :param allow_quadrics: Allow quadric steps.
    :param quadric_budget: Number of quadric steps, `quadric_step_budget(g)` by default.
    :return: The search result, with the matching closed form for comparison.
    :raises GenusOutOfRange: If g is not a valid genus of at least 3.
    """
    verify_genus(g)
    verify_param(allow_quadrics, 'allow_quadrics', bool)
    if quadric_budget is None:
        quadric_budget = quadric_step_budget(g)
    verify_param(quadric_budget, 'quadric_budget', int)
    budget = quadric_budget if allow_quadrics else 0

    witness = _search(MmpState(1, 2 * g - 2), quadric_budget=budget)
    closed = bound_with_quadric(g) if allow_quadrics else bound_no_quadric(g)
    notes: Tuple[str, ...] = ()
    if witness.defect > closed.bound:
        notes = (f'search reaches {witness.defect}, above the closed form {closed.bound}',)
        logger.warning(f'search bound {witness.defect} exceeds closed form {closed.bound} for genus {g}')
    logger.info(f'search bound for genus {g} (quadrics: {allow_quadrics}) is {witness.defect}')
    return DefectBoundResult(
        closed.scenario,
        witness.defect,
        parameter=g,
        witness=witness,
        closed_form=closed.bound,
        notes=notes,
    )


def replay_witness(witness: Witness) -> List[str]:
    """
    Check a witness run step by step.

    :param witness: The run.
    :return: Violations, empty when every step is a legal contraction.
    """
    violations = []
    state = witness.start
    for position, step in enumerate(witness.steps, start=1):
        if step.kind is StepKind.QUADRIC and position > 1 and witness.steps[position - 2].kind is not StepKind.QUADRIC:
            violations.append(f'step {position} contracts a quadric after another contraction')
        if step.before != state:
            violations.append(f'step {position} starts at {step.before.label}, expected {state.label}')
        if step.after not in _moves_from(step.before, quadric_left=1, include_quadric=True).get(step.kind, ()):
            violations.append(f'step {position} ({step}) is not a legal {step.kind.value} contraction')
        state = step.after
    return violations


def main_theorem_two() -> Tuple[Tuple[str, str], ...]:
    """
    The alternatives for a terminal Gorenstein quartic 3-fold Y.

    :return: (key, description) pairs, one of which holds for Y.
    """
    return (
        ('q_factorial', 'Y is Q-factorial'),
        ('plane', 'Y contains a plane'),
        ('quadric', 'Y contains an irreducible reduced quadric'),
        ('del_pezzo_4', 'Y contains an anticanonically embedded del Pezzo surface of degree 4'),
        ('conic_bundle', 'Y has a conic bundle structure over P2, F0 or F2'),
        ('scroll', 'Y contains a rational scroll over a curve listed by enumerate_links(3, apply_hodge=True)'),
    )


def conjectural_bounds() -> Dict[str, int]:
    """
    Conjectured defect bounds, reported as annotations only.

    :return: Family label mapped to the conjectured bound.
    """
    bounds = {'Y_2,3 in P5': 8, 'Y_2,2,2 in P6': 8, 'double sextic (g=2)': 18}
    for g in VALID_GENERA:
        if g >= 6:
            bounds[f'genus {g}'] = (12 - g) // 2 + 5
    return bounds


def _verify_h3(h3: int) -> None:
    verify_param(h3, 'h3', int)
    if h3 not in INDEX_TWO_DEGREES:
        raise DegreeOutOfRange(f'Index-2 degree h3={h3} is out of range; expected 1..5')


def _moves_from(state: MmpState, quadric_left: int, include_quadric: bool) -> Dict[StepKind, Tuple[MmpState, ...]]:
    moves: Dict[StepKind, Tuple[MmpState, ...]] = {}
    if state.index == 1:
        moves[StepKind.GENERIC] = tuple(
            MmpState(1, degree) for degree in INDEX_ONE_DEGREES if degree - state.degree >= 4
        )
        e2_degree = degree_jump(ContractionKind.E2, state.degree)
        if e2_degree % 8 == 0 and e2_degree // 8 in INDEX_TWO_DEGREES:
            moves[StepKind.E2] = (MmpState(2, e2_degree),)
        moves[StepKind.ENDPOINT] = (MmpState(3, QUADRIC_DEGREE), MmpState(4, PROJ_SPACE_DEGREE))
        if include_quadric and quadric_left > 0:
            moves[StepKind.QUADRIC] = tuple(
                MmpState(1, degree) for degree in INDEX_ONE_DEGREES if degree - state.degree >= 2
            )
    elif state.index == 2:
        e2_degree = degree_jump(ContractionKind.E2, state.degree)
        if e2_degree // 8 in INDEX_TWO_DEGREES:
            moves[StepKind.E2] = (MmpState(2, e2_degree),)
    elif state.index == 3:
        moves[StepKind.ENDPOINT] = (MmpState(4, PROJ_SPACE_DEGREE),)
    return moves


def _search(start: MmpState, quadric_budget: int) -> Witness:
    """
    Best run from `start`: largest defect, then fewest steps, then lexicographically smallest steps.
    """
    cap = get_setting('search_safety_cap')
    memo: Dict[Tuple[MmpState, int], Tuple[Tuple[ContractionStep, ...], EndProduct]] = {}

    def key(tail: Tuple[Tuple[ContractionStep, ...], EndProduct]) -> tuple:
        steps, end_product = tail
        return (-(len(steps) + end_product.rank), len(steps), tuple(step.sort_key for step in steps),
                list(EndProduct).index(end_product))

    def best(state: MmpState, quadric_left: int) -> Tuple[Tuple[ContractionStep, ...], EndProduct]:
        if (state, quadric_left) in memo:
            return memo[(state, quadric_left)]
        if len(memo) >= cap:
            raise SearchCapExceeded(f'search visited more than {cap} states')
        options = [((), end_product) for end_product in EndProduct]
        for kind, targets in _moves_from(state, quadric_left, include_quadric=True).items():
            remaining = quadric_left - 1 if kind is StepKind.QUADRIC else 0
            for target in targets:
                steps, end_product = best(target, remaining)
                options.append(((ContractionStep(kind, state, target),) + steps, end_product))
        memo[(state, quadric_left)] = min(options, key=key)
        return memo[(state, quadric_left)]

    steps, end_product = best(start, quadric_budget)
    logger.debug(f'search from {start.label} visited {len(memo)} states')
    return Witness(start=start, steps=steps, end_product=end_product)
