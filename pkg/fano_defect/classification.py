"""
Classification data of non-singular Fano 3-folds of Picard rank 1.

Index-1 varieties are labelled by their anticanonical degree (X22 has genus 12),
index-2 varieties by d = H^3 (V5 has -K^3 = 40).
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from .exceptions import DegreeOutOfRange, FanoDefectException, GenusOutOfRange


class FanoKind(Enum):
    """Families of Picard-rank-1 Fano 3-folds."""

    INDEX_ONE = 'index_one'
    INDEX_TWO = 'index_two'
    QUADRIC = 'quadric'
    PROJ_SPACE = 'proj_space'


INDEX_ONE_GENERA = (2, 3, 4, 5, 6, 7, 8, 9, 10, 12)
INDEX_TWO_DEGREES = (1, 2, 3, 4, 5)

# h^{2,1} of the smooth member of each family (b3 = 2 h^{2,1}); values from the
# Iskovskikh classification. The quartic entry agrees with b3 = 60 for a smooth quartic.
H21_INDEX_ONE = {2: 52, 3: 30, 4: 20, 5: 14, 6: 10, 7: 7, 8: 5, 9: 3, 10: 2, 12: 0}
H21_INDEX_TWO = {1: 21, 2: 10, 3: 5, 4: 2, 5: 0}

_NAME_PATTERN = re.compile(r'^(?:X(?P<x>\d+)|V(?P<v>\d)|(?P<q>Q)|(?P<p>P3))$')


@dataclass(frozen=True)
class FanoDescriptor:
    """
    A Picard-rank-1 terminal Gorenstein Fano 3-fold class.

    `parameter` is the genus for INDEX_ONE, d for INDEX_TWO and None otherwise.
    """

    kind: FanoKind
    parameter: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is FanoKind.INDEX_ONE:
            if self.parameter not in INDEX_ONE_GENERA:
                raise GenusOutOfRange(f'No Fano 3-fold of index 1 and genus {self.parameter}')
        elif self.kind is FanoKind.INDEX_TWO:
            if self.parameter not in INDEX_TWO_DEGREES:
                raise DegreeOutOfRange(f'No Fano 3-fold of index 2 and degree d={self.parameter}')
        elif self.parameter is not None:
            raise FanoDefectException(f'{self.kind.value} takes no parameter')

    @classmethod
    def index_one(cls, genus: int) -> 'FanoDescriptor':
        """Index-1 Fano 3-fold of the given genus."""
        return cls(FanoKind.INDEX_ONE, genus)

    @classmethod
    def index_two(cls, d: int) -> 'FanoDescriptor':
        """Index-2 Fano 3-fold V_d."""
        return cls(FanoKind.INDEX_TWO, d)

    @classmethod
    def quadric(cls) -> 'FanoDescriptor':
        """The quadric 3-fold."""
        return cls(FanoKind.QUADRIC)

    @classmethod
    def proj_space(cls) -> 'FanoDescriptor':
        """Projective 3-space."""
        return cls(FanoKind.PROJ_SPACE)

    @property
    def index(self) -> int:
        """Fano index."""
        return {
            FanoKind.INDEX_ONE: 1,
            FanoKind.INDEX_TWO: 2,
            FanoKind.QUADRIC: 3,
            FanoKind.PROJ_SPACE: 4,
        }[self.kind]

    @property
    def anticanonical_degree(self) -> int:
        """-K^3."""
        if self.kind is FanoKind.INDEX_ONE:
            return 2 * self.parameter - 2
        if self.kind is FanoKind.INDEX_TWO:
            return 8 * self.parameter
        if self.kind is FanoKind.QUADRIC:
            return 54
        return 64

    @property
    def h21_cap(self) -> int:
        return h21_cap(self)

    @property
    def name(self) -> str:
        """Short label: X22, V3, Q or P3."""
        if self.kind is FanoKind.INDEX_ONE:
            return f'X{self.anticanonical_degree}'
        if self.kind is FanoKind.INDEX_TWO:
            return f'V{self.parameter}'
        if self.kind is FanoKind.QUADRIC:
            return 'Q'
        return 'P3'

    @property
    def sort_key(self) -> tuple:
        return (self.index, self.anticanonical_degree)

    def __str__(self) -> str:
        return self.name


def all_rank_one_targets() -> List[FanoDescriptor]:
    """
    Return every Picard-rank-1 Fano class, sorted by (index, anticanonical degree).

    :return: 17 descriptors.
    """
    targets = [FanoDescriptor.index_one(g) for g in INDEX_ONE_GENERA]
    targets += [FanoDescriptor.index_two(d) for d in INDEX_TWO_DEGREES]
    targets += [FanoDescriptor.quadric(), FanoDescriptor.proj_space()]
    return sorted(targets, key=lambda target: target.sort_key)


def h21_cap(f: FanoDescriptor) -> int:
    """
    Return h^{2,1} of the non-singular member of the family.

    :param f: The Fano class.
    :return: The Hodge number.
    """
    if f.kind is FanoKind.INDEX_ONE:
        return H21_INDEX_ONE[f.parameter]
    if f.kind is FanoKind.INDEX_TWO:
        return H21_INDEX_TWO[f.parameter]
    return 0


def fano_by_name(name: str) -> FanoDescriptor:
    """
    Parse a short label such as X22, V3, Q or P3.

    :param name: The label.
    :return: The descriptor.
    :raises FanoDefectException: If the label is unknown.
    """
    match = _NAME_PATTERN.match(name.strip()) if isinstance(name, str) else None
    if match is None:
        raise FanoDefectException(f'Unknown Fano label: {name}')
    if match.group('x'):
        degree = int(match.group('x'))
        if degree % 2:
            raise GenusOutOfRange(f'Index-1 degree must be even: {name}')
        return FanoDescriptor.index_one(degree // 2 + 1)
    if match.group('v'):
        return FanoDescriptor.index_two(int(match.group('v')))
    if match.group('q'):
        return FanoDescriptor.quadric()
    return FanoDescriptor.proj_space()
