"""Serialization of observations and rendering of bucket-report tables."""

from __future__ import annotations

import io
import math
from typing import Iterable, Sequence

from .pipeline import BucketReport, BucketRow, Observation

__all__ = [
    "OBSERVATION_COLUMNS",
    "observations_csv",
    "render_report_table",
    "render_method_table",
    "report_csv",
]

OBSERVATION_COLUMNS = (
    "instrument_id",
    "window_end",
    "method",
    "h",
    "suspect",
    "forward_log_return",
)


def _fmt9(x: float) -> str:
    """Floats in data files carry 9 significant digits."""
    return format(x, ".9g")


def observations_csv(observations: Iterable[Observation]) -> str:
    """Observations as CSV text, canonically ordered for reproducibility."""
    rows = sorted(observations, key=lambda o: (o.instrument_id, o.window_end, o.method.value))
    buf = io.StringIO()
    buf.write(",".join(OBSERVATION_COLUMNS) + "\n")
    for o in rows:
        buf.write(
            f"{o.instrument_id},{o.window_end},{o.method.value},"
            f"{_fmt9(o.h)},{'true' if o.suspect else 'false'},{_fmt9(o.forward_log_return)}\n"
        )
    return buf.getvalue()


def _all_rows(rep: BucketReport) -> list[BucketRow]:
    return [*rep.rows, rep.benchmark_row]


def _fmt_pct(value: float) -> str:
    return "n/a" if math.isnan(value) else f"{value:.2f}%"


def _render_table(title: str, labels: Sequence[str], columns: Sequence[tuple[str, list[str]]]) -> str:
    """Fixed-layout text table: one labeled row per bucket, one column per window."""
    label_width = max(len("H range"), *(len(lbl) for lbl in labels))
    widths = [max(len(head), *(len(cell) for cell in cells)) for head, cells in columns]
    lines = [title]
    header = "H range".ljust(label_width)
    for (head, _), w in zip(columns, widths):
        header += "  " + head.rjust(w)
    lines.append(header)
    for i, lbl in enumerate(labels):
        line = lbl.ljust(label_width)
        for (_, cells), w in zip(columns, widths):
            line += "  " + cells[i].rjust(w)
        lines.append(line)
    return "\n".join(lines) + "\n"


def render_method_table(reports: Sequence[BucketReport]) -> str:
    """Multi-window table for one method: bucket rows down, window sizes across."""
    if not reports:
        raise ValueError("no reports to render")
    method = reports[0].method
    scheme = reports[0].scheme
    for rep in reports:
        if rep.method is not method or rep.scheme != scheme:
            raise ValueError("render_method_table expects one method and one scheme")
    reports = sorted(reports, key=lambda r: r.window)
    labels = [row.label for row in _all_rows(reports[0])]
    columns = [
        (str(rep.window), [_fmt_pct(row.annualized_return) for row in _all_rows(rep)])
        for rep in reports
    ]
    title = f"Annualized return for {method.value} ({scheme} buckets)"
    return _render_table(title, labels, columns)


def render_report_table(rep: BucketReport) -> str:
    """Single-window table, same layout as ``render_method_table``."""
    return render_method_table([rep])


def report_csv(rep: BucketReport) -> str:
    """Report rows (buckets then the "any" row) as CSV text."""
    buf = io.StringIO()
    buf.write("bucket,count,annualized_return_pct\n")
    for row in _all_rows(rep):
        pct = "" if math.isnan(row.annualized_return) else _fmt9(row.annualized_return)
        buf.write(f"{row.label},{row.count},{pct}\n")
    return buf.getvalue()
