"""
The published table of Sarkisov links through a terminal Gorenstein quartic 3-fold.

Rows are stored as printed. Two rows carry an erratum:

* row 30 prints the anticanonical degree 12 of Gamma on V3 in the H-degree
  column and a max deg F of 20; the solver reproduces H-degree 6 and 8.
* row 31 has a unique numerical candidate (x=4, y=1, d=6) whose flop defect
  is e = -10, so it is not an admissible link and is never emitted.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .classification import fano_by_name
from .intersection import CurveInvariants, e1_table
from .takeuchi import AlphaKind, LinkSolution, del_pezzo_candidates

logger = logging.getLogger(__name__)

TABLE_GENUS = 3
HODGE_EXCLUDED_ROWS = (16, 25, 32)

Projection = Tuple[str, str, int, int, str, Tuple[int, ...], int]


@dataclass(frozen=True)
class Erratum:
    """Printed values that the solver cannot reproduce, with the derived replacements."""

    note: str
    derived_deg_gamma: Optional[int] = None
    derived_max_deg_f: Optional[int] = None
    rejected: bool = False
    rejected_candidate: Optional[Tuple[int, int, int]] = None


@dataclass(frozen=True)
class PublishedRow:
    """One printed row."""

    row: int
    z1: str
    alpha_label: str
    pa_gamma: int
    deg_gamma: int
    alpha_kind: AlphaKind
    alpha_data: Tuple[int, ...]
    max_deg_f: int
    erratum: Optional[Erratum] = None

    def projection(self) -> Projection:
        """Comparable key, using derived values where an erratum applies."""
        deg_gamma, max_deg = self.deg_gamma, self.max_deg_f
        if self.erratum is not None and not self.erratum.rejected:
            deg_gamma = self.erratum.derived_deg_gamma or deg_gamma
            max_deg = self.erratum.derived_max_deg_f or max_deg
        return (self.z1, self.alpha_label, self.pa_gamma, deg_gamma, self.alpha_kind.value, self.alpha_data, max_deg)


def _e1(row, z1, z1_tilde, pa, deg, c_pa, c_deg, max_deg, erratum=None) -> PublishedRow:
    return PublishedRow(row, z1, z1_tilde, pa, deg, AlphaKind.DIVISORIAL, (c_pa, c_deg), max_deg, erratum)


def _cb(row, z1, pa, deg, delta, max_deg) -> PublishedRow:
    return PublishedRow(row, z1, 'P2', pa, deg, AlphaKind.CONIC_BUNDLE, (delta,), max_deg)


def _dp(row, z1, pa, deg, d, max_deg, erratum=None) -> PublishedRow:
    return PublishedRow(row, z1, 'P1', pa, deg, AlphaKind.DEL_PEZZO, (d,), max_deg, erratum)


ROW_30_ERRATUM = Erratum(
    note='printed deg(Gamma)=12 is -K.Gamma on V3 (H-degree 6); printed max deg F=20, derived 8',
    derived_deg_gamma=6,
    derived_max_deg_f=8,
)
ROW_31_ERRATUM = Erratum(
    note='the only candidate x=4, y=1, d=6 has flop defect e=-10; not an admissible link',
    rejected=True,
    rejected_candidate=(4, 1, -10),
)

PUBLISHED_ROWS: Tuple[PublishedRow, ...] = (
    _e1(1, 'X22', 'X22', 0, 8, 0, 8, 10),
    _e1(2, 'X22', 'V5', 1, 9, 1, 9, 9),
    _e1(3, 'X22', 'X22', 2, 10, 2, 10, 8),
    _cb(4, 'X22', 2, 10, 4, 8),
    _e1(5, 'X22', 'X12', 3, 11, 0, 3, 5),
    _e1(6, 'X18', 'X18', 0, 6, 0, 6, 8),
    _e1(7, 'X18', 'V4', 1, 7, 1, 7, 7),
    _e1(8, 'X18', 'X18', 2, 8, 2, 8, 6),
    _cb(9, 'X18', 2, 8, 6, 6),
    _e1(10, 'X16', 'Q', 0, 5, 3, 9, 7),
    _e1(11, 'X16', 'X16', 1, 6, 1, 6, 6),
    _dp(12, 'X16', 1, 6, 6, 6),
    _e1(13, 'X16', 'X8', 2, 7, 0, 1, 3),
    _e1(14, 'X16', 'V4', 2, 7, 5, 9, 5),
    _e1(15, 'X14', 'X14', 0, 4, 0, 4, 6),
    _e1(16, 'X14', 'Q', 1, 5, 9, 11, 5),
    _e1(17, 'X14', 'V3', 1, 5, 1, 5, 5),
    _e1(18, 'X12', 'X22', 0, 3, 3, 11, 5),
    _e1(19, 'X12', 'P3', 0, 3, 7, 9, 5),
    _e1(20, 'X12', 'X12', 1, 4, 1, 4, 4),
    _dp(21, 'X12', 1, 4, 4, 4),
    _e1(22, 'X10', 'X10', 0, 2, 0, 2, 4),
    _e1(23, 'X10', 'V5', 0, 2, 7, 12, 4),
    _e1(24, 'X10', 'V2', 1, 3, 1, 3, 3),
    _e1(25, 'X10', 'P3', 1, 3, 15, 11, 3),
    _cb(26, 'X8', 0, 1, 7, 3),
    _e1(27, 'X8', 'X16', 0, 1, 2, 7, 3),
    _dp(28, 'V2', 1, 3, 6, 6),
    _e1(29, 'V2', 'X16', 1, 3, 1, 6, 6),
    _e1(30, 'V3', 'P3', 3, 12, 3, 8, 20, ROW_30_ERRATUM),
    _dp(31, 'V5', 9, 13, 6, 6, ROW_31_ERRATUM),
    _e1(32, 'Q', 'X22', 12, 12, 0, 8, 10),
)


@dataclass
class TableMatch:
    """Result of matching solver output against the published rows."""

    matched: Dict[int, LinkSolution] = field(default_factory=dict)
    missing: List[int] = field(default_factory=list)
    extras: List[LinkSolution] = field(default_factory=list)

    def published_row(self, sol: LinkSolution) -> Optional[int]:
        """Row number matched by `sol`, if any."""
        for row, matched in self.matched.items():
            if matched == sol:
                return row
        return None

    @property
    def unexpected_missing(self) -> List[int]:
        """Missing rows that are not documented as rejected."""
        rejected = {row.row for row in PUBLISHED_ROWS if row.erratum is not None and row.erratum.rejected}
        return [row for row in self.missing if row not in rejected]


def expected_rows() -> Tuple[PublishedRow, ...]:
    """Return the published rows."""
    return PUBLISHED_ROWS


def projection(sol: LinkSolution) -> Projection:
    """
    Project a solution to the published columns.

    :param sol: The solution.
    :return: (Z1, Z~1 or base, pa(Gamma), deg(Gamma), α kind, α invariants, max deg F)
    """
    alpha = sol.alpha
    if alpha.kind is AlphaKind.DIVISORIAL:
        data: Tuple[int, ...] = (alpha.curve.pa, alpha.curve.deg)
    elif alpha.kind is AlphaKind.CONIC_BUNDLE:
        data = (alpha.delta_deg,)
    else:
        data = (alpha.d,)
    psi = sol.psi
    return (psi.target.name, alpha.label, psi.curve.pa, psi.curve.deg, alpha.kind.value, data, sol.max_deg_f)


def match_solutions(solutions: Iterable[LinkSolution], rows: Iterable[PublishedRow] = PUBLISHED_ROWS) -> TableMatch:
    """
    Match solver output with the published rows.

    :param solutions: Solutions for genus 3.
    :param rows: The rows to match against.
    :return: Matched rows, missing rows and extra solutions.
    """
    result = TableMatch()
    by_projection: Dict[Projection, List[LinkSolution]] = {}
    for sol in solutions:
        by_projection.setdefault(projection(sol), []).append(sol)

    used = set()
    for row in rows:
        if row.erratum is not None and row.erratum.rejected:
            result.missing.append(row.row)
            continue
        candidates = [sol for sol in by_projection.get(row.projection(), []) if id(sol) not in used]
        if candidates:
            result.matched[row.row] = candidates[0]
            used.add(id(candidates[0]))
        else:
            result.missing.append(row.row)

    for group in by_projection.values():
        result.extras.extend(sol for sol in group if id(sol) not in used)
    if result.extras:
        logger.warning(f'{len(result.extras)} solutions are not in the published table')
    return result


def rejected_flop_defect(row: PublishedRow) -> Optional[int]:
    """
    Recompute the flop defect of the numerical candidate behind a rejected row.

    :param row: A del Pezzo row whose erratum is marked rejected.
    :return: e for the candidate listed in the erratum, or None when it is not found.
    """
    if row.erratum is None or row.erratum.rejected_candidate is None:
        return None
    psi = e1_table(TABLE_GENUS, fano_by_name(row.z1), CurveInvariants(pa=row.pa_gamma, deg=row.deg_gamma))
    x, y, _ = row.erratum.rejected_candidate
    for cand_x, cand_y, e, d in del_pezzo_candidates(psi):
        if (cand_x, cand_y) == (x, y) and (d,) == row.alpha_data:
            return e
    return None
