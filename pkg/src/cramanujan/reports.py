"""
Density and longest-run tables over a grid of ``c`` values, emitted as CSV
or JSON.  Rows are computed concurrently against one shared prime table
and always come out in grid order.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from .bounds import upper_bound
from .errors import InvalidArgumentError, OutOfRangeError, ResourceLimitError
from .generator import RamanujanList, generate_through
from .primes import PrimeTable, RationalC, build_table
from .statistics import DensityReport, RunReport, density, run_report

TABLE1_COLUMNS = ("c", "expected_density", "actual_density", "ratio")
TABLE2_COLUMNS = ("c", "expected_ram", "actual_ram", "expected_nonram", "actual_nonram")
FORMATS = ("csv", "json")


def round_half_up(x: float, places: int) -> str:
    """Decimal string of ``x`` rounded half-up at ``places`` digits.

    Rounds the shortest repr of the float, so 0.46875 -> "0.4688".
    """
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))


def round_int_half_up(x: float) -> int:
    return int(Decimal(repr(float(x))).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def default_grid() -> List[RationalC]:
    """0.05, 0.10, ..., 0.90."""
    return [RationalC(k, 20) for k in range(1, 19)]


def parse_grid(text: str) -> List[RationalC]:
    """``"start:stop:step"`` (inclusive stop) or a comma list of c values."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidArgumentError(f"grid range must be start:stop:step, got {text!r}")
        try:
            start, stop, step = (Fraction(p) for p in parts)
        except ValueError as exc:
            raise InvalidArgumentError(f"bad grid {text!r}") from exc
        if step <= 0:
            raise InvalidArgumentError("grid step must be positive")
        out = []
        x = start
        while x <= stop:
            out.append(RationalC.parse(x))
            x += step
        return out
    return [RationalC.parse(p) for p in text.split(",") if p.strip()]


def shared_table(
    grid: Sequence[RationalC], limit: int, mem_cap: Optional[int] = None
) -> PrimeTable:
    """One table large enough for every ``generate_through(c, limit)`` first attempt."""
    base = build_table(limit, mem_cap=mem_cap)
    need = limit
    for c in grid:
        n = max(2, math.ceil((1 - float(c)) * base.pi(limit)) + 8)
        need = max(need, upper_bound(c, n, base, mem_cap=mem_cap).x0 + 1)
    if need <= base.limit:
        return base
    return build_table(need, mem_cap=mem_cap)


def _lists(grid, limit, table, workers, mem_cap) -> List[RamanujanList]:
    def one(c):
        try:
            return generate_through(c, limit, table, mem_cap=mem_cap)
        except (InvalidArgumentError, ResourceLimitError, OutOfRangeError) as exc:
            raise type(exc)(f"c={c}: {exc}") from exc

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, grid))


def table1_rows(
    grid: Sequence[RationalC],
    limit: int,
    table: Optional[PrimeTable] = None,
    workers: int = 4,
    mem_cap: Optional[int] = None,
) -> List[DensityReport]:
    if not grid:
        raise InvalidArgumentError("grid is empty")
    grid = [RationalC.parse(c) for c in grid]
    if table is None:
        table = shared_table(grid, limit, mem_cap)
    lists = _lists(grid, limit, table, workers, mem_cap)
    return [density(lst, table, limit) for lst in lists]


def table2_rows(
    grid: Sequence[RationalC],
    lo: int,
    hi: int,
    table: Optional[PrimeTable] = None,
    workers: int = 4,
    mem_cap: Optional[int] = None,
) -> List[RunReport]:
    if not grid:
        raise InvalidArgumentError("grid is empty")
    if not lo < hi:
        raise InvalidArgumentError("need lo < hi")
    grid = [RationalC.parse(c) for c in grid]
    if table is None:
        table = shared_table(grid, hi, mem_cap)
    lists = _lists(grid, hi, table, workers, mem_cap)
    return [run_report(lst, table, lo, hi) for lst in lists]


def _csv(columns, rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def format_table1(reports: Sequence[DensityReport], fmt: str = "csv") -> str:
    if fmt not in FORMATS:
        raise InvalidArgumentError(f"unknown format {fmt!r}")
    rounded = [
        (
            r.c.decimal_label(),
            round_half_up(r.expected_density, 4),
            round_half_up(r.actual_density, 4),
            round_half_up(r.ratio_last, 4),
        )
        for r in reports
    ]
    if fmt == "csv":
        return _csv(TABLE1_COLUMNS, rounded)
    rows = []
    for r, (label, exp, act, ratio) in zip(reports, rounded):
        rows.append(
            {
                "c": label,
                "expected_density": float(exp),
                "actual_density": float(act),
                "ratio": float(ratio),
                "raw": {
                    "c": str(r.c),
                    "limit": r.limit,
                    "pi_c": r.pi_c,
                    "pi": r.pi,
                    "expected_density": r.expected_density,
                    "actual_density": r.actual_density,
                    "ratio": r.ratio_last,
                },
            }
        )
    return json.dumps({"table": "density", "rows": rows}, indent=2) + "\n"


def format_table2(reports: Sequence[RunReport], fmt: str = "csv") -> str:
    if fmt not in FORMATS:
        raise InvalidArgumentError(f"unknown format {fmt!r}")
    rounded = [
        (
            r.c.decimal_label(),
            round_int_half_up(r.longest_ram_expected),
            r.longest_ram_actual,
            round_int_half_up(r.longest_nonram_expected),
            r.longest_nonram_actual,
        )
        for r in reports
    ]
    if fmt == "csv":
        return _csv(TABLE2_COLUMNS, rounded)
    rows = []
    for r, vals in zip(reports, rounded):
        row = dict(zip(TABLE2_COLUMNS, vals))
        row["raw"] = r.as_dict()
        rows.append(row)
    return json.dumps({"table": "longest_runs", "rows": rows}, indent=2) + "\n"


def emit_table1(
    grid: Sequence[RationalC],
    limit: int,
    fmt: str = "csv",
    table: Optional[PrimeTable] = None,
    workers: int = 4,
    mem_cap: Optional[int] = None,
) -> str:
    """Density table: c, expected_density, actual_density, ratio."""
    return format_table1(table1_rows(grid, limit, table, workers, mem_cap), fmt)


def emit_table2(
    grid: Sequence[RationalC],
    lo: int,
    hi: int,
    fmt: str = "csv",
    table: Optional[PrimeTable] = None,
    workers: int = 4,
    mem_cap: Optional[int] = None,
) -> str:
    """Longest-run table: c, expected_ram, actual_ram, expected_nonram, actual_nonram."""
    return format_table2(table2_rows(grid, lo, hi, table, workers, mem_cap), fmt)
