"""Command-line interface: ``hadminors {minors,report,bounds,verify,search}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from typing import Optional

from . import __version__, analysis, bounds, checks, kernels
from .catalog import SearchBudget, SearchExhausted, construct, search_maxdet
from .errors import CapacityError, ParseError, RoundingHazardError
from .matrix import SignMatrix, parse_matrix, serialize
from .minors import MinorProfile, enumerate_minors

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_HAZARD = 3
EXIT_SEARCH = 4

PROGRESS_ORDER = 15


def parse_orders(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or A, got {text!r}") from None
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"bad order range {text!r}")
    return a, b


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="matrix file (order on line 1, then rows of +/-)")
    src.add_argument("--construct", metavar="NAME:ARG",
                     help="sylvester:K, paley:Q, maxdet:N, or kron:NAME/ARG,NAME/ARG")
    src.add_argument("--search", type=int, metavar="N", help="search for a maxdet matrix of order N")
    p.add_argument("--seed", type=int, default=0, help="seed for search and sampling (default 0)")
    p.add_argument("--budget-seconds", type=float, default=600.0, help="search time limit")


def _add_enum(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alg", choices=("A", "D"), default="D", help="enumeration algorithm (default D)")
    p.add_argument("--orders", type=parse_orders, metavar="A..B", help="minor orders to enumerate")
    p.add_argument("--min-order", type=int)
    p.add_argument("--max-order", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hadminors", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({kernels.BACKEND} kernels)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minors", help="enumerate all minors and print the profile")
    _add_source(p)
    _add_enum(p)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")

    p = sub.add_parser("report", help="depth, thresholds, mean squares, vanishing counts")
    _add_source(p)
    _add_enum(p)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--no-pairs", action="store_true", help="skip the complementary-minor check")

    p = sub.add_parser("bounds", help="excluded orders for maxdet submatrices of Hadamard matrices")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("suite", choices=sorted(checks.SUITES) + ["all"])
    p.add_argument("--order", type=int, help="restrict the suite to one matrix order")

    p = sub.add_parser("search", help="search for a maxdet matrix and print it")
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-seconds", type=float, default=600.0)
    p.add_argument("--out")
    return ap


def load_source(args) -> SignMatrix:
    if args.file:
        with open(args.file, encoding="ascii", errors="replace") as fh:
            return parse_matrix(fh)
    if args.construct:
        return construct(args.construct)
    return search_maxdet(args.search, budget=SearchBudget(seconds=args.budget_seconds), seed=args.seed)


def selected_orders(args, n: int) -> list[int]:
    lo, hi = args.orders if args.orders else (1, n)
    if args.min_order is not None:
        lo = max(lo, args.min_order)
    if args.max_order is not None:
        hi = min(hi, args.max_order)
    hi = min(hi, n)
    if lo > hi:
        raise CapacityError(f"no minor orders selected for a matrix of order {n}")
    return list(range(lo, hi + 1))


def write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".hadminors-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _progress(n: int):
    if n < PROGRESS_ORDER:
        return None
    start = time.monotonic()

    def report(m, done, total):
        print(f"[order {m}] {done}/{total} row sets, {time.monotonic() - start:.0f}s", file=sys.stderr, flush=True)

    return report


def profile_table(p: MinorProfile) -> str:
    k = p.n // 4
    lines = []
    for m in reversed(p.orders):
        lines.append(f"m={m} {analysis.format_value_set(p.counts[m], k)}")
    return "\n".join(lines) + "\n"


def report_table(rep: analysis.MinorReport) -> str:
    dr = rep.depth
    flag = {None: "?", True: "yes", False: "no"}
    out = [f"n={rep.n} k={rep.n // 4} d={dr.d} m_d={dr.m_d} m_f={dr.m_f} hadamard={'yes' if rep.hadamard else 'no'}"]
    out.append(f"{'m':>3}  {'max?':4}  {'full?':5}  {'zeros':>12}  {'R_L':>10}  {'R_H':>6}  values")
    ms = {r.m: r.rendered() for r in rep.mean_square.rows}
    for r in dr.rows:
        s = ms[r.m]
        out.append(f"{r.m:>3}  {flag[r.max_flag]:4}  {flag[r.full_flag]:5}  {rep.vanishing[r.m]:>12}  "
                   f"{s['R_L']:>10}  {s['R_H']:>6}  {r.values}")
    if rep.szollosi is not None:
        out.append(f"complementary minors: {'pass' if rep.szollosi.ok else 'FAIL'} ({rep.szollosi.checked} selectors)")
    if rep.cohn is not None:
        out.append(f"hadamard submatrices above n/2: {'none' if rep.cohn.ok else rep.cohn.hadamard_orders}")
    return "\n".join(out) + "\n"


def cmd_minors(args) -> int:
    A = load_source(args)
    ms = selected_orders(args, A.n)
    p = enumerate_minors(A, ms, alg=args.alg, workers=args.workers, progress=_progress(A.n))
    if args.format == "json":
        text = p.to_json(indent=1) + "\n"
    elif args.format == "csv":
        text = p.to_csv()
    else:
        text = profile_table(p)
    write_output(text, args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    A = load_source(args)
    ms = selected_orders(args, A.n)
    if ms != list(range(1, A.n + 1)):
        raise CapacityError("report needs every minor order; drop --orders/--min-order/--max-order")
    p = enumerate_minors(A, ms, alg=args.alg, workers=args.workers, progress=_progress(A.n))
    rep = analysis.minor_report(A, p, check_pairs=not args.no_pairs)
    if args.format == "json":
        text = rep.to_json() + "\n"
    elif args.format == "csv":
        text = rep.to_csv()
    else:
        text = report_table(rep)
    write_output(text, args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.n < 4:
        raise CapacityError("bounds needs n >= 4")
    rep = bounds.bounds_report(args.n)
    if args.format == "json":
        iv = rep.interval
        d = {"n": rep.n, "threshold": rep.threshold, "f_max": rep.f_max, "empty": iv.empty,
             "x0": None if iv.empty else round(iv.x0, 12), "x1": None if iv.empty else round(iv.x1, 12),
             "excluded_orders": rep.excluded_orders, "n_half_plus_5ln": rep.lower_limit,
             "n_minus_2": rep.upper_limit, "depth3_inequality": rep.depth3}
        sys.stdout.write(json.dumps(d, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(rep.lines()) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = checks.run_suite(args.suite, args.order)
    failed = [c for c in results if not c.ok]
    for c in results:
        extra = f"  ({c.detail})" if c.detail else ""
        print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}{extra}")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_search(args) -> int:
    A = search_maxdet(args.n, budget=SearchBudget(seconds=args.budget_seconds), seed=args.seed)
    write_output(serialize(A), args.out)
    return EXIT_OK


COMMANDS = {"minors": cmd_minors, "report": cmd_report, "bounds": cmd_bounds, "verify": cmd_verify,
            "search": cmd_search}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except RoundingHazardError as e:
        print(f"error: rounding hazard: {e}", file=sys.stderr)
        return EXIT_HAZARD
    except SearchExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SEARCH
    except (ParseError, CapacityError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
