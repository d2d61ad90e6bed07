"""Output writers for the command-line surface.

JSON goes through orjson with sorted keys and two-space indentation, CSV through
the csv module with six significant digits and exact integer determinants.
"""
import csv
import io
import math
from typing import Any, List, Sequence

import orjson
from pydantic import BaseModel

from core.utils import format_sig
from multitree.types import MultitreeReport, TreeMode
from schemas.responses import MultitreeDocument

PAPER_HEADER = ("a12", "a43", "a13", "a23", "a24", "a14", "minf", "R", "D")

_JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def dumps(payload: Any) -> str:
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(by_alias=True, mode="json")
    return orjson.dumps(payload, option=_JSON_OPTIONS).decode("utf-8") + "\n"


def document_json(document: MultitreeDocument) -> str:
    """Serialize after re-validating, so unknown fields never reach a file."""
    payload = document.model_dump(by_alias=True, mode="json")
    MultitreeDocument.model_validate(payload)
    return dumps(payload)


def format_determinant(value) -> str:
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if math.isfinite(value) and value.is_integer():
        return str(int(value))
    return format_sig(value)


def multitree_header(report: MultitreeReport, permute_weights: bool = False) -> List[str]:
    N = report.tuple.N
    if N == 3:
        header = list(PAPER_HEADER)
    else:
        header = [f"a{i + 1}{j + 1}" for i in range(N + 1) for j in range(i + 1, N + 1)] + ["minf", "R", "D"]
    if report.mode is not TreeMode.FERMAT:
        header.append("steiner")
    if permute_weights:
        header += [f"b{i + 1}" for i in range(N + 1)]
    return header


def multitree_rows(report: MultitreeReport, permute_weights: bool = False) -> List[List[str]]:
    rows = []
    for row in report.rows:
        assign = row.assignment
        lengths = assign.paper_columns() if assign.N == 3 else assign.lengths
        cells = [format_sig(v) for v in lengths]
        cells += [format_sig(row.fermat_length), format_sig(row.circumradius), format_determinant(row.determinant)]
        if report.mode is not TreeMode.FERMAT:
            cells.append(format_sig(row.steiner_length))
        if permute_weights:
            cells += [format_sig(b) for b in row.weights]
        rows.append(cells)
    return rows


def write_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(h)), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(header)]
    lines = ["  ".join(str(h).rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def yes_no(flag: bool) -> str:
    return "true" if flag else "false"
