"""
Command-line entry point.

Exit status: 0 success, 1 validation mismatch, 2 usage error,
3 resource limit.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from typing import List, Optional

from . import reports
from .bfile import BFileParseError, SequenceValidationError, compare_sequences, read_bfile
from .bounds import upper_bound
from .errors import InvalidArgumentError, OutOfRangeError, ResourceLimitError
from .generator import (
    INTEGER_SWEEP,
    STRICT_REAL,
    generate,
    generate_through,
    semantics_discrepancy_scan,
)
from .primes import RationalC, build_table, parse_size
from .statistics import density, interval_density, run_report

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

_POW_RE = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*$")


def _int(text: str) -> int:
    """Integers written as ``1000000``, ``10^6`` or ``1e6``."""
    m = _POW_RE.match(text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    try:
        return int(text)
    except ValueError:
        pass
    try:
        f = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if f != int(f):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(f)


def _c(text: str) -> RationalC:
    try:
        return RationalC.parse(text)
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid(text: str):
    try:
        return reports.parse_grid(text)
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _size(text: str) -> int:
    try:
        return parse_size(text)
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cramanujan",
        description="Generalized (c-)Ramanujan primes: generation, bounds, tables.",
    )
    p.add_argument("--mem-cap", type=_size, default=None,
                   help="byte cap for prime tables (e.g. 512M, 2G); overrides $CRAMANUJAN_MEM_CAP")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="print R_{c,1..n}")
    g.add_argument("--c", type=_c, required=True)
    g.add_argument("--n", type=_int, required=True)
    g.add_argument("--limit", type=_int, default=None, help="largest sieve limit allowed")
    g.add_argument("--strict-real-x", action="store_true",
                   help="use the infimum over real x instead of the integer sweep")
    g.add_argument("--format", choices=("text", "csv", "json"), default="text")

    d = sub.add_parser("density", help="density of c-Ramanujan primes below a limit")
    d.add_argument("--c", type=_c, required=True)
    d.add_argument("--limit", type=_int, required=True)
    d.add_argument("--lo", type=_int, default=None,
                   help="also report the density over primes in (lo, limit]")
    d.add_argument("--format", choices=("text", "json"), default="text")

    r = sub.add_parser("runs", help="longest runs over primes in (lo, hi)")
    r.add_argument("--c", type=_c, required=True)
    r.add_argument("--lo", type=_int, required=True)
    r.add_argument("--hi", type=_int, required=True)
    r.add_argument("--format", choices=("text", "json"), default="text")

    b = sub.add_parser("bounds", help="upper-bound certificate for R_{c,n}")
    b.add_argument("--c", type=_c, required=True)
    b.add_argument("--n", type=_int, required=True)
    b.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="compare R_{c,1..n} with an OEIS b-file")
    v.add_argument("--c", type=_c, required=True)
    v.add_argument("--bfile", required=True)
    v.add_argument("--n", type=_int, required=True)

    for name, helptext in (("table1", "density table"), ("table2", "longest-run table")):
        t = sub.add_parser(name, help=helptext)
        t.add_argument("--grid", type=_grid, default=reports.default_grid(),
                       help="start:stop:step or comma list (default 0.05:0.90:0.05)")
        t.add_argument("--format", choices=reports.FORMATS, default="csv")
        t.add_argument("--workers", type=int, default=4)
        if name == "table1":
            t.add_argument("--limit", type=_int, default=10**6)
        else:
            t.add_argument("--lo", type=_int, default=10**5)
            t.add_argument("--hi", type=_int, default=10**6)

    s = sub.add_parser("scan", help="where strict real-x semantics would move some R_{c,n}")
    s.add_argument("--c", type=_c, required=True)
    s.add_argument("--n", type=_int, required=True)
    s.add_argument("--horizon", type=_int, default=None,
                   help="defaults to the bound certificate for n")
    return p


def _cmd_generate(args) -> int:
    semantics = STRICT_REAL if args.strict_real_x else INTEGER_SWEEP
    lst = generate(args.c, args.n, semantics=semantics, mem_cap=args.mem_cap, sieve_cap=args.limit)
    if args.format == "text":
        print(" ".join(map(str, lst.values)))
    elif args.format == "csv":
        print("n,value")
        for i, val in enumerate(lst.values, start=1):
            print(f"{i},{val}")
    else:
        doc = {
            "c": str(args.c),
            "semantics": lst.semantics,
            "horizon": lst.horizon,
            "values": list(lst.values),
        }
        if lst.certificate is not None:
            doc["certificate"] = lst.certificate.as_dict()
        print(json.dumps(doc))
    return EXIT_OK


def _cmd_density(args) -> int:
    table = build_table(args.limit, mem_cap=args.mem_cap)
    lst = generate_through(args.c, args.limit, table, mem_cap=args.mem_cap)
    rep = density(lst, table, args.limit)
    doc = {
        "c": str(rep.c),
        "limit": rep.limit,
        "pi_c": rep.pi_c,
        "pi": rep.pi,
        "actual_density": rep.actual_density,
        "expected_density": rep.expected_density,
        "ratio": rep.ratio_last,
    }
    if args.lo is not None:
        doc["lo"] = args.lo
        doc["interval_density"] = interval_density(lst, table, args.lo, args.limit)
    if args.format == "json":
        print(json.dumps(doc))
    else:
        for key, val in doc.items():
            print(f"{key}: {val}")
    return EXIT_OK


def _cmd_runs(args) -> int:
    if args.lo >= args.hi:
        raise InvalidArgumentError("need lo < hi")
    table = build_table(args.hi, mem_cap=args.mem_cap)
    lst = generate_through(args.c, args.hi, table, mem_cap=args.mem_cap)
    doc = run_report(lst, table, args.lo, args.hi).as_dict()
    if args.format == "json":
        print(json.dumps(doc))
    else:
        for key, val in doc.items():
            print(f"{key}: {val}")
    return EXIT_OK


def _cmd_bounds(args) -> int:
    cert = upper_bound(args.c, args.n, mem_cap=args.mem_cap)
    if args.format == "json":
        print(json.dumps(cert.as_dict()))
    else:
        for key, val in cert.as_dict().items():
            print(f"{key}: {val}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    ref = read_bfile(args.bfile)
    lst = generate(args.c, args.n, mem_cap=args.mem_cap)
    bad = compare_sequences(lst, ref, args.n)
    if bad is None:
        print(f"OK: R_{{{args.c},1..{args.n}}} matches {ref.name}")
        return EXIT_OK
    i, got, want = bad
    print(f"MISMATCH at n={i}: computed {got}, reference {want}")
    return EXIT_MISMATCH


def _cmd_table1(args) -> int:
    sys.stdout.write(reports.emit_table1(args.grid, args.limit, args.format,
                                         workers=args.workers, mem_cap=args.mem_cap))
    return EXIT_OK


def _cmd_table2(args) -> int:
    sys.stdout.write(reports.emit_table2(args.grid, args.lo, args.hi, args.format,
                                         workers=args.workers, mem_cap=args.mem_cap))
    return EXIT_OK


def _cmd_scan(args) -> int:
    lst = generate(args.c, args.n, mem_cap=args.mem_cap)
    horizon = args.horizon if args.horizon is not None else lst.horizon
    table = build_table(horizon + 1, mem_cap=args.mem_cap)
    found = semantics_discrepancy_scan(table, args.c, args.n, horizon, reference=lst)
    print(f"# c={args.c} n<={args.n} horizon={horizon}: {len(found)} discrepancies")
    for k, a, b in found:
        print(k, a, b)
    return EXIT_OK


COMMANDS = {
    "generate": _cmd_generate,
    "density": _cmd_density,
    "runs": _cmd_runs,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
    "table1": _cmd_table1,
    "table2": _cmd_table2,
    "scan": _cmd_scan,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (BFileParseError, SequenceValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidArgumentError, OutOfRangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
