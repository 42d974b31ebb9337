"""Deterministic table rendering: aligned text, CSV, JSON and markdown."""

from __future__ import annotations

import csv
import io
import json
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence

from .ledger import SlopeReport

FORMATS = ("text", "csv", "json", "md")

REPORT_COLUMNS = ["n_twists", "sigma", "e", "chi_h", "c1_squared", "K2", "chi_f", "slope", "slope_decimal"]


def rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decimal6(x: Fraction) -> str:
    """``x`` rounded to 6 significant digits, trailing zeros kept."""
    if x == 0:
        return "0.00000"
    with localcontext() as ctx:
        ctx.prec = 6
        d = Decimal(x.numerator) / Decimal(x.denominator)
    places = max(0, 5 - d.adjusted())
    return f"{d:.{places}f}"


def report_row(r: SlopeReport) -> dict[str, Any]:
    return {
        "n_twists": r.n,
        "sigma": r.sigma,
        "e": r.e,
        "chi_h": r.chi_h,
        "c1_squared": r.c1_squared,
        "K2": r.K2,
        "chi_f": r.chi_f,
        "slope": rational(r.slope),
        "slope_decimal": decimal6(r.slope),
    }


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, Fraction):
        return rational(v)
    return str(v)


def render(rows: Sequence[dict[str, Any]], columns: Sequence[str], fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps([{c: row.get(c) for c in columns} for row in rows], indent=2) + "\n"
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(columns)
        wr.writerows(cells)
        return buf.getvalue()
    if fmt == "md":
        lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
        lines += ["| " + " | ".join(r) + " |" for r in cells]
        return "\n".join(lines) + "\n"
    if fmt == "text":
        widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
        out = ["  ".join(c.rjust(w) for c, w in zip(columns, widths)).rstrip()]
        out += ["  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
