"""
Intersection numbers of E1 contractions in the (-K, E) basis.

Divisors are written as pairs (a, b) meaning a(-K) + bE. After a flop, every
monomial keeps its value except E^3, which drops by the flop defect e.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

from .classification import FanoDescriptor
from .exceptions import (
    DegreeExceedsTarget,
    FanoDefectException,
    InconsistentTarget,
    NegativeJump,
    NonpositiveFlopDefect,
    NonpositiveSurfaceDegree,
)
from .helpers import exact_quotient, verify_param

Divisor = Tuple[int, int]
ANTICANONICAL: Divisor = (1, 0)
EXCEPTIONAL: Divisor = (0, 1)


@dataclass(frozen=True)
class CurveInvariants:
    """Arithmetic genus and H-degree of a curve on a Fano 3-fold."""

    pa: int
    deg: int

    def __post_init__(self) -> None:
        verify_param(self.pa, 'pa', int)
        verify_param(self.deg, 'deg', int)
        if self.pa < 0:
            raise FanoDefectException(f'Arithmetic genus must be non-negative, got {self.pa}')
        if self.deg < 1:
            raise FanoDefectException(f'Curve degree must be positive, got {self.deg}')


@dataclass(frozen=True)
class BlowdownData:
    """
    An E1 contraction Z -> Z1 of a divisor E onto a curve Gamma, with Z of genus g.

    k3, k2e, ke2 and e3 are (-K)^3, (-K)^2.E, (-K).E^2 and E^3 on Z.
    """

    g: int
    target: FanoDescriptor
    curve: CurveInvariants
    A: int
    k3: int
    k2e: int
    ke2: int
    e3: int


@dataclass(frozen=True)
class FlopData:
    """The intersection quadruple on the flopped side."""

    k3: int
    k2e: int
    ke2: int
    e3: int


class ContractionKind(Enum):
    """Extremal divisorial contraction types met on a Gorenstein weak Fano 3-fold."""

    E1 = 'E1'
    E2 = 'E2'
    E3 = 'E3'
    E4 = 'E4'


def e1_table(g: int, target: FanoDescriptor, curve: CurveInvariants) -> BlowdownData:
    """
    Return the intersection table of the blow-up of `curve` on `target`.

    :param g: Genus of the blown-up side, so that (-K_Z)^3 = 2g - 2.
    :param target: The Fano 3-fold Z1 containing the curve.
    :param curve: Genus and H-degree of the curve.
    :return: The validated table.
    :raises InconsistentTarget: If the target degree does not match the degree equation.
    :raises NonpositiveSurfaceDegree: If (-K)^2.E is not positive.
    :raises DegreeExceedsTarget: If -K_{Z1}.Gamma exceeds -K_{Z1}^3.
    """
    verify_param(g, 'g', int)
    verify_param(target, 'target', FanoDescriptor)
    verify_param(curve, 'curve', CurveInvariants)

    A = target.index * curve.deg
    k3 = 2 * g - 2
    expected = k3 + 2 * (A + 1 - curve.pa)
    if target.anticanonical_degree != expected:
        raise InconsistentTarget(
            f'{target} has degree {target.anticanonical_degree}, '
            f'blowing up (pa={curve.pa}, deg={curve.deg}) from genus {g} requires {expected}'
        )
    k2e = A + 2 - 2 * curve.pa
    if k2e <= 0:
        raise NonpositiveSurfaceDegree(f'(-K)^2.E = {k2e} is not positive for {target} and {curve}')
    if A > target.anticanonical_degree:
        raise DegreeExceedsTarget(f'-K.Gamma = {A} exceeds the degree of {target}')

    return BlowdownData(
        g=g,
        target=target,
        curve=curve,
        A=A,
        k3=k3,
        k2e=k2e,
        ke2=2 * curve.pa - 2,
        e3=-(A - 2 + 2 * curve.pa),
    )


def flop_transport(b: BlowdownData, e: int) -> FlopData:
    """
    Transport the table through a flop with defect e.

    :param b: The table before the flop.
    :param e: The flop defect.
    :return: The flopped quadruple.
    :raises NonpositiveFlopDefect: If e < 1.
    """
    verify_param(e, 'e', int)
    if e < 1:
        raise NonpositiveFlopDefect(f'Flop defect must be a strictly positive integer, got {e}')
    return FlopData(k3=b.k3, k2e=b.k2e, ke2=b.ke2, e3=b.e3 - e)


def triple_product(b: BlowdownData, e: int, u: Divisor, v: Divisor, w: Divisor) -> int:
    """
    Evaluate the cubic intersection form on the flopped side.

    :param b: The ψ-side table.
    :param e: The flop defect.
    :param u: First divisor (a, b) = a(-K) + bE.
    :param v: Second divisor.
    :param w: Third divisor.
    :return: u.v.w
    """
    flopped = flop_transport(b, e)
    (u1, u2), (v1, v2), (w1, w2) = u, v, w
    return (
        u1 * v1 * w1 * flopped.k3
        + (u1 * v1 * w2 + u1 * v2 * w1 + u2 * v1 * w1) * flopped.k2e
        + (u1 * v2 * w2 + u2 * v1 * w2 + u2 * v2 * w1) * flopped.ke2
        + u2 * v2 * w2 * flopped.e3
    )


def solve_flop_defect(b: BlowdownData, u: Divisor, v: Divisor, w: Divisor, value: int = 0) -> Optional[int]:
    """
    Return the flop defect e for which u.v.w equals `value`.

    The result may be zero or negative; callers decide admissibility.

    :return: The integer e, or None when the product does not involve E^3 or e is not integral.
    """
    at_one = triple_product(b, 1, u, v, w)
    quotient = exact_quotient(value - at_one, triple_product(b, 2, u, v, w) - at_one)
    return None if quotient is None else 1 + quotient


def quadratic_coefficients(f: Callable[[int], int]) -> Tuple[int, int, int]:
    """
    Interpolate an integer-valued quadratic from its values at 0, 1 and 2.

    :return: (a, b, c) with f(t) = a t^2 + b t + c.
    """
    f0, f1, f2 = f(0), f(1), f(2)
    twice_a = f2 - 2 * f1 + f0
    a = twice_a // 2
    return a, f1 - f0 - a, f0


def degree_jump(
    kind: ContractionKind,
    k3_before: int,
    curve: Optional[CurveInvariants] = None,
    target_k: Optional[int] = None,
) -> int:
    """
    Return the anticanonical degree after a divisorial contraction.

    :param kind: Contraction type.
    :param k3_before: (-K)^3 before the contraction.
    :param curve: For E1, the image curve.
    :param target_k: For E1, -K_{X'}.Gamma on the target.
    :return: (-K)^3 after the contraction.
    :raises NegativeJump: If an E1 jump would not increase the degree.
    """
    verify_param(kind, 'kind', ContractionKind)
    verify_param(k3_before, 'k3_before', int)
    if kind is ContractionKind.E2:
        return k3_before + 8
    if kind in (ContractionKind.E3, ContractionKind.E4):
        return k3_before + 2

    verify_param(curve, 'curve', CurveInvariants)
    verify_param(target_k, 'target_k', int)
    if target_k < 0:
        raise NegativeJump(f'-K.Gamma must be non-negative, got {target_k}')
    jump = 2 * (target_k + 1 - curve.pa)
    if jump <= 0:
        raise NegativeJump(f'E1 contraction of a curve with pa={curve.pa} and -K.Gamma={target_k} gives jump {jump}')
    return k3_before + jump
