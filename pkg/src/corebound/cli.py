"""Command-line front end.

Subcommands:
  local      one subset-local probability query
  global     whole-graph methods at a single parameter point
  sweep      CSV/JSON table over a range of expected edge counts
  breakdown  scan for the first expected edge count where a formula fails
  oracle     exhaustive desk-scale exact values

Exit status: 0 success, 2 invalid arguments, 3 output I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

from . import montecarlo, sweep as sweep_mod
from .global_prob import at_least_one_bound, interleaving_bounds
from .local_prob import connectivity_prob, covering_prob, gilbert_prob, interleaved_local_prob
from .numerics import ProbValue, choose

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

LOCAL_METHODS = ("connectivity", "gilbert", "covering",
                 "interleaved-lower", "interleaved-upper", "mc")
GLOBAL_METHODS = sweep_mod.SWEEP_METHODS


def _fmt(x: float) -> str:
    # shortest round-trip repr keeps CSV output byte-stable across runs
    return repr(float(x))


def _flag(valid: bool) -> str:
    return "1" if valid else "0"


def _column_name(method: str) -> str:
    return method.replace("-", "_")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, required=True, help="edge cardinality (>= 2)")
    parser.add_argument("--r", type=int, default=1, help="core order (default 1)")
    parser.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    parser.add_argument("--trials", type=int, default=10_000, help="Monte Carlo trials")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default="-", help="output path ('-' = stdout)")


def _resolve_p(parser: argparse.ArgumentParser, n: int, k: int,
               p: float | None, e: float | None) -> float:
    if (p is None) == (e is None):
        parser.error("give exactly one of --p or --e-u/--e-v")
    if p is None:
        m = choose(n, k)
        if m == 0:
            return 0.0
        p = e / m
    if not 0.0 <= p <= 1.0:
        parser.error(f"edge probability {p} outside [0, 1]")
    return p


def _emit(args, header: list[str], rows: list[list[str]], json_obj) -> int:
    try:
        if args.out == "-":
            _write_payload(sys.stdout, args.format, header, rows, json_obj)
        else:
            with open(args.out, "w", newline="") as fh:
                _write_payload(fh, args.format, header, rows, json_obj)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _write_payload(fh, fmt: str, header, rows, json_obj) -> None:
    if fmt == "csv":
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    else:
        json.dump(json_obj, fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# local
# ---------------------------------------------------------------------------

def cmd_local(args, parser) -> int:
    p = _resolve_p(parser, args.u, args.k, args.p, args.e_u)
    method = args.method
    if method == "mc":
        predicate = "connectivity" if args.r == 1 else "min-degree"
        est = montecarlo.mc_local(args.u, args.k, p, args.r, predicate,
                                  args.trials, args.seed)
        header = ["u", "p", "method", "value", "valid", "trials", "stderr"]
        row = [str(args.u), _fmt(p), method, _fmt(est.mean), "1",
               str(est.trials), _fmt(est.stderr)]
        obj = {"u": args.u, "p": p, "method": method, "value": est.mean,
               "valid": True, "trials": est.trials, "stderr": est.stderr}
        return _emit(args, header, [row], obj)
    if method == "connectivity":
        pv = connectivity_prob(args.u, args.k, p)
    elif method == "gilbert":
        if args.k != 2:
            parser.error("--method gilbert requires --k 2")
        pv = gilbert_prob(args.u, p)
    elif method == "covering":
        pv = covering_prob(args.u, args.k, p, args.r)
    elif method == "interleaved-lower":
        pv = interleaved_local_prob(args.u, args.k, p / args.r, args.r)
    else:
        pv = interleaved_local_prob(args.u, args.k, p, args.r)
    header = ["u", "p", "method", "value", "valid"]
    row = [str(args.u), _fmt(p), method, _fmt(pv.value), _flag(pv.valid)]
    obj = {"u": args.u, "p": p, "method": method, "value": pv.value,
           "valid": pv.valid, "note": pv.note}
    return _emit(args, header, [row], obj)


# ---------------------------------------------------------------------------
# global
# ---------------------------------------------------------------------------

def _global_point(methods, v, p, k, r, trials, seed):
    values: dict[str, ProbValue] = {}
    est = None
    if "interleaved-lower" in methods and "interleaved-upper" in methods:
        lower, upper = interleaving_bounds(v, p, k, r)
        values["interleaved-lower"] = lower
        values["interleaved-upper"] = upper
    for m in methods:
        if m == "mc" or m in values:
            continue
        if m in ("connectivity", "covering"):
            values[m] = at_least_one_bound(v, p, k, r, method=m)
        elif m == "interleaved-lower":
            values[m] = interleaving_bounds(v, p, k, r)[0]
        elif m == "interleaved-upper":
            values[m] = interleaving_bounds(v, p, k, r)[1]
    if "mc" in methods:
        est = montecarlo.mc_global(v, k, p, r, trials, seed)
    return values, est


def cmd_global(args, parser) -> int:
    p = _resolve_p(parser, args.v, args.k, args.p, args.e_v)
    methods = tuple(dict.fromkeys(args.method)) if args.method else ("connectivity",)
    for m in methods:
        if m not in GLOBAL_METHODS:
            parser.error(f"unknown method {m!r}; pick from {GLOBAL_METHODS}")
    values, est = _global_point(methods, args.v, p, args.k, args.r,
                                args.trials, args.seed)
    header = ["v", "p"]
    row = [str(args.v), _fmt(p)]
    obj = {"v": args.v, "p": p, "k": args.k, "r": args.r}
    for m in methods:
        if m == "mc":
            continue
        pv = values[m]
        col = _column_name(m)
        header += [col, f"{col}_valid"]
        row += [_fmt(pv.value), _flag(pv.valid)]
        obj[col] = pv.value
        obj[f"{col}_valid"] = pv.valid
    if est is not None:
        header += ["mc_mean", "mc_stderr"]
        row += [_fmt(est.mean), _fmt(est.stderr)]
        obj["mc_mean"] = est.mean
        obj["mc_stderr"] = est.stderr
    return _emit(args, header, [row], obj)


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _sweep_table(result: sweep_mod.SweepResult):
    spec = result.spec
    formula = [m for m in spec.methods if m != "mc"]
    header = ["e_v", "v", "p"]
    for m in formula:
        col = _column_name(m)
        header += [col, f"{col}_valid", f"{col}_break"]
    if "mc" in spec.methods:
        header += ["mc_mean", "mc_stderr"]
    rows = []
    json_rows = []
    for row in result.rows:
        cells = [str(row.e), str(row.v), _fmt(row.p)]
        obj = {"e_v": row.e, "v": row.v, "p": row.p}
        for m in formula:
            pv = row.values[m]
            threshold = result.breakdown_at[m]
            broke = threshold is not None and row.e >= threshold
            col = _column_name(m)
            cells += [_fmt(pv.value), _flag(pv.valid), _flag(broke)]
            obj[col] = pv.value
            obj[f"{col}_valid"] = pv.valid
            obj[f"{col}_break"] = broke
        if row.mc is not None:
            cells += [_fmt(row.mc.mean), _fmt(row.mc.stderr)]
            obj["mc_mean"] = row.mc.mean
            obj["mc_stderr"] = row.mc.stderr
        rows.append(cells)
        json_rows.append(obj)
    json_obj = {
        "spec": {"k": spec.k, "r": spec.r, "overhead": spec.overhead,
                 "e_min": spec.e_min, "e_max": spec.e_max,
                 "methods": list(spec.methods), "trials": spec.trials,
                 "seed": spec.seed, "scope": spec.scope},
        "rows": json_rows,
        "breakdown_at": {_column_name(m): result.breakdown_at[m] for m in formula},
    }
    return header, rows, json_obj


def cmd_sweep(args, parser) -> int:
    methods = tuple(dict.fromkeys(args.method)) if args.method else ("connectivity", "mc")
    try:
        spec = sweep_mod.SweepSpec(
            k=args.k, r=args.r, overhead=args.overhead,
            e_min=args.e_min, e_max=args.e_max, methods=methods,
            trials=args.trials, seed=args.seed, scope=args.scope,
        )
    except ValueError as exc:
        parser.error(str(exc))
    result = sweep_mod.run_sweep(spec)
    header, rows, json_obj = _sweep_table(result)
    status = _emit(args, header, rows, json_obj)
    if status == EXIT_OK:
        # summary goes to stderr when the table itself occupies stdout
        sink = sys.stderr if args.out == "-" else sys.stdout
        for m in (m for m in spec.methods if m != "mc"):
            threshold = result.breakdown_at[m]
            where = str(threshold) if threshold is not None else "none"
            print(f"breakdown_at {_column_name(m)}={where}", file=sink)
    return status


# ---------------------------------------------------------------------------
# breakdown
# ---------------------------------------------------------------------------

def cmd_breakdown(args, parser) -> int:
    if args.method not in sweep_mod.FORMULA_METHODS:
        parser.error(f"breakdown needs a formula method, not {args.method!r}")
    threshold = sweep_mod.find_breakdown(args.k, args.r, args.overhead,
                                         args.method, args.scope, args.cap)
    if threshold is None:
        print(f"no breakdown found for {args.method} at or below e={args.cap}")
    else:
        print(f"breakdown {args.method} at e={threshold}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def cmd_oracle(args, parser) -> int:
    p = _resolve_p(parser, args.v, args.k, args.p, args.e_v)
    try:
        if args.exactly_one is not None:
            value = montecarlo.exact_exactly_one(args.v, args.k, p, args.r,
                                                 args.exactly_one)
            kind = f"exactly-one ({args.exactly_one})"
        else:
            value = montecarlo.exact_global(args.v, args.k, p, args.r)
            kind = "at-least-one"
    except ValueError as exc:
        parser.error(str(exc))
    header = ["v", "p", "kind", "value"]
    row = [str(args.v), _fmt(p), kind, _fmt(value)]
    obj = {"v": args.v, "p": p, "k": args.k, "r": args.r,
           "kind": kind, "value": value}
    return _emit(args, header, [row], obj)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corebound",
        description="Core-formation probabilities in k-uniform random hypergraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_local = sub.add_parser("local", help="probability on one specific vertex subset")
    p_local.add_argument("--u", type=int, required=True, help="subset size")
    p_local.add_argument("--p", type=float, default=None)
    p_local.add_argument("--e-u", dest="e_u", type=float, default=None,
                         help="expected induced edge count (sets p = e_u / C(u,k))")
    p_local.add_argument("--method", choices=LOCAL_METHODS, default="connectivity")
    _add_common(p_local)
    p_local.set_defaults(func=cmd_local)

    p_global = sub.add_parser("global", help="whole-graph probability methods at one point")
    p_global.add_argument("--v", type=int, required=True, help="vertex count")
    p_global.add_argument("--p", type=float, default=None)
    p_global.add_argument("--e-v", dest="e_v", type=float, default=None,
                          help="expected edge count (sets p = e_v / C(v,k))")
    p_global.add_argument("--method", action="append", choices=GLOBAL_METHODS,
                          help="repeatable; default connectivity")
    _add_common(p_global)
    p_global.set_defaults(func=cmd_global)

    p_sweep = sub.add_parser("sweep", help="table over a range of expected edge counts")
    p_sweep.add_argument("--overhead", type=float, required=True,
                         help="vertex-to-edge ratio: v = round(overhead * e)")
    p_sweep.add_argument("--e-min", dest="e_min", type=int, required=True)
    p_sweep.add_argument("--e-max", dest="e_max", type=int, required=True)
    p_sweep.add_argument("--method", action="append", choices=GLOBAL_METHODS,
                         help="repeatable; default connectivity + mc")
    p_sweep.add_argument("--scope", choices=sweep_mod.SCOPES, default="global")
    _add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_break = sub.add_parser("breakdown", help="first expected edge count where a formula fails")
    p_break.add_argument("--overhead", type=float, default=1.0)
    p_break.add_argument("--method", choices=sweep_mod.FORMULA_METHODS, required=True)
    p_break.add_argument("--scope", choices=sweep_mod.SCOPES, default="local")
    p_break.add_argument("--cap", type=int, default=500, help="scan limit (default 500)")
    _add_common(p_break)
    p_break.set_defaults(func=cmd_breakdown)

    p_oracle = sub.add_parser("oracle", help="exhaustive exact values (desk scale)")
    p_oracle.add_argument("--v", type=int, required=True)
    p_oracle.add_argument("--p", type=float, default=None)
    p_oracle.add_argument("--e-v", dest="e_v", type=float, default=None)
    p_oracle.add_argument("--exactly-one", dest="exactly_one",
                          choices=("minimal", "maximal"), default=None,
                          help="count hypergraphs with exactly one core set "
                               "(default: at-least-one)")
    _add_common(p_oracle)
    p_oracle.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
