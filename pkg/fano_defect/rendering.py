"""
Markdown, CSV and JSON renderings of link tables.

Every rendering carries the same columns; JSON adds `schema`, `genus` and `hodge_filter`.
"""
import csv
import io
import json
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional

from .published_table import TABLE_GENUS, TableMatch, match_solutions
from .takeuchi import LinkSolution

JSON_SCHEMA_VERSION = 1
COLUMNS = (
    'row',
    'z1',
    'z1_tilde',
    'pa_gamma',
    'deg_gamma',
    'anticanonical_deg_gamma',
    'alpha',
    'max_deg_f',
    'x',
    'y',
    'k',
    'e',
    'hodge_feasible',
    'published_row',
    'extra',
)
INTEGER_COLUMNS = (
    'row', 'pa_gamma', 'deg_gamma', 'anticanonical_deg_gamma', 'max_deg_f', 'x', 'y', 'k', 'e', 'published_row',
)
BOOLEAN_COLUMNS = ('hodge_feasible', 'extra')


class OutputFormat(Enum):
    """Output formats of the link table."""

    MARKDOWN = 'markdown'
    CSV = 'csv'
    JSON = 'json'


def link_rows(solutions: Iterable[LinkSolution], match: Optional[TableMatch] = None) -> List[Dict[str, Any]]:
    """
    Tabulate solutions.

    For genus 3 the published row number is filled in and unmatched solutions are flagged `extra`.

    :param solutions: Solutions in canonical order.
    :param match: A precomputed match; computed for genus 3 when omitted.
    :return: One dict per solution, keyed by `COLUMNS`.
    """
    solutions = list(solutions)
    if match is None and solutions and solutions[0].g == TABLE_GENUS:
        match = match_solutions(solutions)
    rows = []
    for position, sol in enumerate(solutions, start=1):
        published_row = match.published_row(sol) if match is not None else None
        rows.append({
            'row': position,
            'z1': sol.psi.target.name,
            'z1_tilde': sol.alpha.label,
            'pa_gamma': sol.psi.curve.pa,
            'deg_gamma': sol.psi.curve.deg,
            'anticanonical_deg_gamma': sol.psi.A,
            'alpha': sol.alpha.description,
            'max_deg_f': sol.max_deg_f,
            'x': sol.x,
            'y': sol.y,
            'k': sol.k,
            'e': sol.e,
            'hodge_feasible': sol.hodge_feasible,
            'published_row': published_row,
            'extra': match is not None and published_row is None,
        })
    return rows


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return str(value)


def render_csv(rows: List[Dict[str, Any]]) -> str:
    """CSV with a header line and `\\n` line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_cell(row[column]) for column in COLUMNS])
    return buffer.getvalue()


def render_json(rows: List[Dict[str, Any]], genus: int, hodge_filter: bool) -> str:
    """JSON document `{"schema": 1, "genus": g, "hodge_filter": b, "rows": [...]}`."""
    document = {
        'schema': JSON_SCHEMA_VERSION,
        'genus': genus,
        'hodge_filter': hodge_filter,
        'rows': [{column: row[column] for column in COLUMNS} for row in rows],
    }
    return json.dumps(document, indent=2) + '\n'


def render_markdown(rows: List[Dict[str, Any]]) -> str:
    """A GitHub flavoured Markdown table."""
    lines = [
        '| ' + ' | '.join(COLUMNS) + ' |',
        '|' + '|'.join('---' for _ in COLUMNS) + '|',
    ]
    for row in rows:
        lines.append('| ' + ' | '.join(_cell(row[column]) for column in COLUMNS) + ' |')
    return '\n'.join(lines) + '\n'


def render(rows: List[Dict[str, Any]], output_format: OutputFormat, genus: int, hodge_filter: bool) -> str:
    """Render rows in the requested format."""
    if output_format is OutputFormat.CSV:
        return render_csv(rows)
    if output_format is OutputFormat.JSON:
        return render_json(rows, genus, hodge_filter)
    return render_markdown(rows)


def parse_csv(text: str) -> List[Dict[str, Any]]:
    """Read a CSV rendering back into typed rows."""
    rows = []
    for record in csv.DictReader(io.StringIO(text)):
        row: Dict[str, Any] = {}
        for column in COLUMNS:
            value = record[column]
            if column in INTEGER_COLUMNS:
                row[column] = int(value) if value != '' else None
            elif column in BOOLEAN_COLUMNS:
                row[column] = value == 'true'
            else:
                row[column] = value
        rows.append(row)
    return rows
