"""``partlog`` command line.

Exit status: 0 when every check passes, 1 on any mismatch, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence, Tuple

from . import cache, report
from .analysis import (Direction, LogBehaviorError, Verdict, check_bounds_12, classify_pairs,
                       condition_report, scan_log_behavior)
from .examples import EXAMPLE_CHECKS
from .partitions import PartitionFamily, dumps_sequence
from .tables import BoxTooSmall, TableId, reproduce_table

LONG_RUN_ENV = "PARTLOG_ALLOW_LONG_RUN"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_range(text: str) -> Tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"expected LO..HI, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"expected integers in {text!r}") from None


def parse_box(text: str) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """``A1..A2xB1..B2``, or a single ``A1..A2`` for a square box."""
    parts = text.lower().split("x")
    if len(parts) == 1:
        r = parse_range(parts[0])
        return r, r
    if len(parts) != 2:
        raise UsageError(f"expected A1..A2xB1..B2, got {text!r}")
    return parse_range(parts[0]), parse_range(parts[1])


def _family(text: str) -> PartitionFamily:
    try:
        return PartitionFamily.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, command: str, inputs: dict, key: str, payload, passed: bool, markdown: str,
          csv_text: Optional[str] = None, floats_ok: bool = False) -> int:
    if args.json:
        sys.stdout.write(report.json_report(command, inputs, key, payload, passed, floats_ok))
    elif args.csv:
        if csv_text is None:
            raise UsageError(f"--csv is only available for verdict grids, not {command}")
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(markdown)
    return 0 if passed else 1


def _sequence(args, family: PartitionFamily, upto: int):
    return cache.get_sequence(family, upto, use_cache=not args.no_cache)


def cmd_gen(args) -> int:
    family = _family(args.family)
    seq = _sequence(args, family, args.upto)
    if args.out:
        path = cache.save(seq, args.out)
    else:
        path = cache.cache_path(family) if not args.no_cache else None
    inputs = {"family": family, "upto": args.upto}
    last = seq[args.upto]
    md = (f"{family.canonical()}: generated 0..{args.upto}, last value {last}\n"
          + (f"written to {path}\n" if path else dumps_sequence(seq)))
    return _emit(args, "gen", inputs, "result", {"file": str(path) if path else None,
                                                  "count": len(seq), "last": last}, True, md)


def cmd_scan(args) -> int:
    family = _family(args.family)
    a_range, b_range = parse_box(args.box)
    mode = Direction.parse(args.mode)
    seq = _sequence(args, family, a_range[1] + b_range[1])
    grid = classify_pairs(seq, a_range, b_range, mode, workers=args.workers)
    cells = sorted(grid.verdicts.items())
    md = report.markdown_equality_failure(
        f"{family.canonical()} on {a_range} x {b_range} ({mode.value})",
        grid.equalities, grid.failures)
    payload = {"equal": grid.equalities, "failure": grid.failures,
               "strict_count": len(grid.cells(Verdict.STRICT))}
    csv_text = report.verdict_csv((a, b, v) for (a, b), v in cells)
    inputs = {"family": family, "box": [a_range, b_range], "mode": mode}
    # a scan is an observation, not a claim
    return _emit(args, "scan", inputs, "verdicts", payload, True, md, csv_text)


def cmd_threshold(args) -> int:
    family = _family(args.family)
    mode = Direction.parse(args.mode)
    seq = _sequence(args, family, args.horizon + 1)
    rep = scan_log_behavior(seq, mode, args.horizon)
    md = (f"{family.canonical()}: candidate_N = {rep.candidate_N} "
          f"(log-{mode.value} on ({rep.candidate_N}, {rep.horizon}], "
          f"{len(rep.violations)} violations)\n")
    inputs = {"family": family, "horizon": args.horizon, "mode": mode}
    payload = {"candidate_N": rep.candidate_N, "violations": list(rep.violations)}
    return _emit(args, "threshold", inputs, "result", payload, rep.eventually_holds, md)


def cmd_condition(args) -> int:
    family = _family(args.family)
    mode = Direction.parse(args.mode)
    top = max(args.N + args.k, args.M if args.M is not None else 0) + 1
    seq = _sequence(args, family, top)
    rep = condition_report(seq, args.N, args.k, args.M, mode)
    passed = rep.condition13_holds and (args.M is None or rep.d is not None)
    md = report.markdown_table(
        ["N", "k", "root condition", "M", "d", "ratio failures"],
        [[args.N, args.k, rep.condition13_holds, "-" if args.M is None else args.M,
          "-" if rep.d is None else rep.d, list(rep.witness_failures) or "none"]])
    inputs = {"family": family, "N": args.N, "k": args.k, "M": args.M, "mode": mode}
    return _emit(args, "condition", inputs, "result", rep, passed, md)


def cmd_bounds(args) -> int:
    family = _family(args.family)
    mode = Direction.parse(args.mode)
    seq = _sequence(args, family, args.n + args.m)
    inputs = {"family": family, "N": args.N, "n": args.n, "m": args.m, "mode": mode}
    try:
        lower, upper = check_bounds_12(seq, args.N, args.n, args.m, mode)
    except LogBehaviorError as exc:
        return _emit(args, "bounds", inputs, "result", {"error": str(exc)}, False,
                     f"hypothesis fails: {exc}\n")
    md = report.markdown_table(["N", "n", "m", "lower bound", "upper bound"],
                               [[args.N, args.n, args.m, lower, upper]])
    return _emit(args, "bounds", inputs, "result", {"lower": lower, "upper": upper},
                 lower and upper, md)


def cmd_verify(args) -> int:
    try:
        table = TableId.parse(args.table)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    box = parse_box(args.box) if args.box else None
    allow = args.allow_long_run or os.environ.get(LONG_RUN_ENV, "") not in ("", "0")
    inputs = {"table": table, "box": box}
    try:
        result = reproduce_table(table, box, m=args.m, ks=args.k, allow_long_run=allow,
                                 workers=args.workers)
    except BoxTooSmall as exc:
        raise UsageError(str(exc)) from None
    if table is TableId.TABLE3_NK:
        md = report.markdown_table(
            ["k", "horizon", "expected", "computed", "result"],
            [[e["k"], e["horizon"], e["expected"], e["computed"], "match" if e["match"] else "MISMATCH"]
             for e in result.entries])
        if result.skipped:
            md += (f"\nskipped k = {', '.join(map(str, result.skipped))} "
                   "(long run; pass --allow-long-run)\n")
        inputs.update(k=args.k, allow_long_run=allow)
        return _emit(args, "verify", inputs, "diff", result, result.passed, md)
    diffs = result if isinstance(result, list) else [result]
    passed = all(d.passed for d in diffs)
    md = "\n".join(report.markdown_diff(d) for d in diffs)
    payload = [{"table": d.table, "family": d.family, "box": d.box, "match": d.match,
                "missing_in_computed": d.missing_in_computed,
                "extra_in_computed": d.extra_in_computed, "notes": d.notes, "pass": d.passed}
               for d in diffs]
    if table is TableId.TABLE4_MARY:
        inputs["m"] = args.m
    return _emit(args, "verify", inputs, "diff", payload if len(payload) > 1 else payload[0],
                 passed, md)


def cmd_example(args) -> int:
    names = sorted(EXAMPLE_CHECKS) if args.kind == "all" else [args.kind]
    for name in names:
        if name not in EXAMPLE_CHECKS:
            raise UsageError(f"unknown example {name!r}; choose from all, "
                             + ", ".join(sorted(EXAMPLE_CHECKS)))
    reports = [EXAMPLE_CHECKS[name]() for name in names]
    passed = all(r.passed for r in reports)
    md = ""
    for r in reports:
        md += f"## {r.name}\n\n" + report.markdown_table(
            ["check", "result"], [[k, "pass" if v else "FAIL"] for k, v in r.checks.items()]) + "\n"
    payload = {r.name: r.checks for r in reports}
    return _emit(args, "example", {"kind": args.kind}, "result", payload, passed, md)


def cmd_logpoly(args) -> int:
    from . import logpoly

    try:
        data = logpoly.logpoly_data(args.r, args.s, args.t)
        emp = logpoly.empirical_log_behavior(args.r, args.s, args.t, parse_range(args.n_range))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    passed = emp.passed
    payload = {"kappa": data.kappa, "onset": emp.onset, "disagreements": emp.disagreements,
               "empirical_sign": emp.asymptotic_sign}
    rows = [["kappa", data.kappa], ["second-difference onset", emp.onset],
            ["disagreements", len(emp.disagreements)]]
    if args.box:
        try:
            ab = logpoly.theorem42_abundance_check(args.r, args.s, args.t, parse_box(args.box))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        payload.update(failures=ab.failures, equal_count=len(ab.equalities), abundance_onset=ab.onset)
        rows += [["failures", report._pairs(ab.failures)], ["abundance onset", ab.onset]]
        passed = passed and ab.passed
    md = report.markdown_table(["quantity", "value"], rows)
    inputs = {"r": args.r, "s": args.s, "t": args.t, "n_range": args.n_range, "box": args.box}
    return _emit(args, "logpoly", inputs, "result", payload, passed, md, floats_ok=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="partlog", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    out = fmt.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="JSON report")
    out.add_argument("--csv", action="store_true", help="CSV verdict grid (scan only)")
    fmt.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    fmt.add_argument("--workers", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[fmt], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("gen", cmd_gen, "generate a sequence into the cache or a file")
    p.add_argument("--family", required=True)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--out")

    p = add("scan", cmd_scan, "classify x_a x_b against x_{a+b} over a box")
    p.add_argument("--family", required=True)
    p.add_argument("--box", required=True)
    p.add_argument("--mode", default="concave", choices=["concave", "convex"])

    p = add("threshold", cmd_threshold, "last log-concavity violation up to a horizon")
    p.add_argument("--family", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--mode", default="concave", choices=["concave", "convex"])

    p = add("condition", cmd_condition, "root condition and ratio condition")
    p.add_argument("--family", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--M", type=int)
    p.add_argument("--mode", default="concave", choices=["concave", "convex"])

    p = add("bounds", cmd_bounds, "two-sided bound on x_n")
    p.add_argument("--family", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", default="concave", choices=["concave", "convex"])

    p = add("verify", cmd_verify, "reproduce an embedded table and diff it")
    p.add_argument("--table", required=True, help=", ".join(t.value for t in TableId))
    p.add_argument("--box")
    p.add_argument("--m", type=int, nargs="+", default=[2, 3, 4, 5, 6, 7])
    p.add_argument("--k", type=int, nargs="+", default=[2, 3])
    p.add_argument("--allow-long-run", action="store_true")

    p = add("example", cmd_example, "run the worked-example checks")
    p.add_argument("--kind", required=True, help="all, " + ", ".join(sorted(EXAMPLE_CHECKS)))

    p = add("logpoly", cmd_logpoly, "sign checks for n^r exp(t n^s)")
    p.add_argument("--r", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--n-range", default="10..1000")
    p.add_argument("--box")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be at least 1")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(json.dumps({"error": "usage", "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
