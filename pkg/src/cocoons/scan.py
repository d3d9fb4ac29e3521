"""Exact ratio sequences over valid thresholds and their running minima.

For each valid ``m``::

    s(m)       = 1 - (2/m) (T(m) + |A4(m)|)   = (4|A6(m)| + 7) / m
    s_tilde(m) = 1 - (2/m) (T(m) + 2|A6(m)|)  = (2|A4(m)| + 7) / m

Both are kept as :class:`fractions.Fraction`. A finite scan can only report
the smallest value seen so far; nothing here estimates a limit or an
infimum.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Iterator

from .census import CensusReport, CensusTable, valid_thresholds
from .errors import DomainError, TheoremViolation

__all__ = [
    "ScanRow",
    "ScanSummary",
    "s_values",
    "iter_scan",
    "scan",
    "summarize",
    "CSV_HEADER",
    "format_float",
    "row_record",
    "write_csv",
    "write_jsonl",
]

CSV_HEADER = (
    "m", "t", "a2", "a4", "a6", "pi",
    "s_num", "s_den", "s_float",
    "st_num", "st_den", "st_float",
    "min_s_float", "min_st_float",
)  # fmt: skip


def s_values(report: CensusReport) -> tuple[Fraction, Fraction]:
    """``(s, s_tilde)`` at ``report.m`` as reduced fractions in (0, 1)."""
    m = report.m
    s = 1 - Fraction(2, m) * (report.t + report.a4)
    s_tilde = 1 - Fraction(2, m) * (report.t + 2 * report.a6)
    if not (0 < s < 1 and 0 < s_tilde < 1):
        raise TheoremViolation(f"ratios at m={m} left (0, 1): s={s}, s_tilde={s_tilde}")
    return s, s_tilde


@dataclass(frozen=True)
class ScanRow:
    m: int
    t: int
    a2: int
    a4: int
    a6: int
    pi: int
    s: Fraction
    s_tilde: Fraction
    min_s: Fraction
    min_s_tilde: Fraction


@dataclass(frozen=True)
class ScanSummary:
    """Final state of a scan. ``final_min_*`` are empirical minima, not infima."""

    limit: int
    rows_emitted: int
    final_min_s: Fraction
    final_min_s_tilde: Fraction
    argmin_m_s: int
    argmin_m_s_tilde: int


def iter_scan(limit: int, threads: int = 1, memory_cap: int | None = None) -> Iterator[ScanRow]:
    """Yield one row per valid ``m <= limit`` in increasing order."""
    if limit < 9:
        raise DomainError(f"scan limit must be at least 9, got {limit}")
    ms = valid_thresholds(limit)
    table = CensusTable.build(int(ms[-1]), threads=threads, memory_cap=memory_cap)
    min_s = min_st = None
    for report in table.reports(ms):
        report.check()
        s, st = s_values(report)
        min_s = s if min_s is None or s < min_s else min_s
        min_st = st if min_st is None or st < min_st else min_st
        yield ScanRow(report.m, report.t, report.a2, report.a4, report.a6, report.pi, s, st, min_s, min_st)


def summarize(limit: int, rows: Iterable[ScanRow]) -> ScanSummary:
    """Fold rows into a summary; ties keep the earliest ``m``."""
    n = 0
    best_s = best_st = None
    for row in rows:
        n += 1
        if best_s is None or row.s < best_s[0]:
            best_s = (row.s, row.m)
        if best_st is None or row.s_tilde < best_st[0]:
            best_st = (row.s_tilde, row.m)
    if n == 0:
        raise DomainError("cannot summarize an empty scan")
    return ScanSummary(limit, n, best_s[0], best_st[0], best_s[1], best_st[1])


def scan(limit: int, threads: int = 1, memory_cap: int | None = None) -> tuple[list[ScanRow], ScanSummary]:
    rows = list(iter_scan(limit, threads=threads, memory_cap=memory_cap))
    return rows, summarize(limit, rows)


def format_float(x: Fraction) -> str:
    return f"{float(x):.12g}"


def row_record(row: ScanRow) -> dict:
    """The CSV columns of ``row`` as a dict, floats rounded to 12 significant digits."""
    return {
        "m": row.m,
        "t": row.t,
        "a2": row.a2,
        "a4": row.a4,
        "a6": row.a6,
        "pi": row.pi,
        "s_num": row.s.numerator,
        "s_den": row.s.denominator,
        "s_float": float(format_float(row.s)),
        "st_num": row.s_tilde.numerator,
        "st_den": row.s_tilde.denominator,
        "st_float": float(format_float(row.s_tilde)),
        "min_s_float": float(format_float(row.min_s)),
        "min_st_float": float(format_float(row.min_s_tilde)),
    }


def write_csv(rows: Iterable[ScanRow], fh: IO[str]) -> int:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    n = 0
    for row in rows:
        writer.writerow([
            row.m, row.t, row.a2, row.a4, row.a6, row.pi,
            row.s.numerator, row.s.denominator, format_float(row.s),
            row.s_tilde.numerator, row.s_tilde.denominator, format_float(row.s_tilde),
            format_float(row.min_s), format_float(row.min_s_tilde),
        ])  # fmt: skip
        n += 1
    return n


def write_jsonl(rows: Iterable[ScanRow], fh: IO[str]) -> int:
    n = 0
    for row in rows:
        fh.write(json.dumps(row_record(row)) + "\n")
        n += 1
    return n
