"""``hahn`` command-line interface.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
Errors are reported on stderr as JSON ``{"schema", "error", "message"}``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from fractions import Fraction
from typing import List, Optional

from . import oracle
from ._validation import as_hahn, check_positive
from .errors import HahnError
from .number import HahnNumber, as_cutoff, as_exponent, mul
from .partitions import DIAGONAL, CustomFinitePartition, diagonal_block
from .seminorms import gamma_seminorm, metric_gamma, metric_u, u_seminorm
from .series import PowerSeries, classify, eval_weak, radius
from .text import format_exponent, format_number, to_json_obj
from .topology import (
    check_finite_partition_equivalence,
    check_weak_subset_u,
    witness_restriction,
    witness_u_not_weak,
    witness_weak_not_valuation,
)

SCHEMA = "hahn/1"
FALLBACK_TOL = 1e-10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_tol() -> float:
    raw = os.environ.get("HAHN_DEFAULT_TOL")
    if raw is None:
        return FALLBACK_TOL
    try:
        return check_positive("HAHN_DEFAULT_TOL", float(raw))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _params(pairs: List[str]) -> dict:
    out = {}
    for item in pairs or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--params expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _load_series(source: str) -> PowerSeries:
    if source.startswith("file:"):
        path = source[len("file:"):]
        try:
            with open(path) as fh:
                return PowerSeries.from_json(json.load(fh))
        except OSError as exc:
            raise UsageError(f"cannot read series file: {exc}") from None
    if source not in ("geometric", "exp", "sin", "cos"):
        raise UsageError(f"unknown series {source!r}")
    return PowerSeries.standard(source)


# -- subcommands ----------------------------------------------------------

def cmd_eval_expr(args):
    x = as_hahn(args.expression, args.cutoff)
    if args.json:
        _emit({"schema": SCHEMA, "value": format_number(x), "number": to_json_obj(x)})
    else:
        print(format_number(x))


def cmd_seminorm(args):
    x = as_hahn(args.expr, args.cutoff)
    index = args.index if args.index is not None else args.radius
    if index is None:
        raise UsageError("give --index (gamma) or --radius (u)")
    if args.flavor == "gamma":
        try:
            n = int(index)
        except ValueError:
            raise UsageError(f"--index must be a positive integer, got {index!r}") from None
        check_positive("--index", n, integer=True)
        value = gamma_seminorm(DIAGONAL, n, x)
    else:
        value = u_seminorm(as_exponent(index), x)
    if args.json:
        _emit({"schema": SCHEMA, "flavor": args.flavor, "index": index, "value": value})
    else:
        print(repr(value))


def cmd_metric(args):
    x, y = as_hahn(args.x, args.cutoff), as_hahn(args.y, args.cutoff)
    check_positive("--k", args.k, integer=True)
    m = metric_gamma(DIAGONAL, x, y, args.k) if args.flavor == "gamma" else metric_u(x, y, args.k)
    if args.json:
        _emit({"schema": SCHEMA, "flavor": args.flavor, "k": args.k, **m.to_dict()})
    else:
        print(f"{m.value!r} +/- {m.error_bound!r}")


def cmd_partition(args):
    if (args.block is None) == (args.prefix is None):
        raise UsageError("give exactly one of --block and --prefix")
    n = args.block if args.block is not None else args.prefix
    check_positive("block index", n, integer=True)
    values = sorted(diagonal_block(n) if args.block is not None else DIAGONAL.prefix(n))
    if args.json:
        _emit({"schema": SCHEMA, "kind": args.kind, "index": n,
               "what": "block" if args.block is not None else "prefix",
               "values": [format_exponent(q) for q in values]})
    else:
        for q in values:
            print(format_exponent(q))


def cmd_witness(args):
    p = _params(args.params)
    try:
        if args.claim == "weak-not-valuation":
            w = witness_weak_not_valuation(DIAGONAL, as_exponent(p.get("n", "1")), float(p.get("r", "0.5")))
        elif args.claim == "u-not-weak":
            w = witness_u_not_weak(DIAGONAL, as_exponent(p.get("q", "1")), float(p.get("r", "0.5")))
        else:
            w = witness_restriction(DIAGONAL, as_exponent(p.get("q", "1/2")))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    _emit(w.to_dict())


def _parse_order(text: str):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"order must be comma-separated integers, got {text!r}") from None


def cmd_check(args):
    p = _params(args.params)
    check_positive("--samples", args.samples, integer=True)
    x = as_hahn(p.get("x", "0"))
    try:
        if args.claim == "finite-equivalence":
            other = CustomFinitePartition.relabel_diagonal(_parse_order(p.get("order", "2,3,1,5,4")))
            eps = check_positive("eps", float(p.get("eps", "0.3")))
            report = check_finite_partition_equivalence(DIAGONAL, other, x, eps, args.samples, args.seed)
        else:
            r = check_positive("r", float(p.get("r", "0.5")))
            report = check_weak_subset_u(DIAGONAL, x, r, args.samples, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(report.to_dict())
    return 0 if report.ok else 1


def cmd_radius(args):
    ps = _load_series(args.series)
    check_positive("--n", args.n, integer=True)
    report = radius(ps, args.n, args.window)
    if args.json:
        _emit(report.to_dict())
    else:
        print("inf" if report.radius == math.inf else repr(report.radius))


def cmd_eval(args):
    ps = _load_series(args.series)
    x = as_hahn(args.x)
    cutoff = as_cutoff(args.cutoff if args.cutoff is not None else "3")
    value = eval_weak(ps, x, cutoff, args.tol)
    if args.json:
        _emit({"schema": SCHEMA, "value": format_number(value), "number": to_json_obj(value)})
    else:
        print(format_number(value))


def _selftest_rows(seed: int, tol: float):
    rng = random.Random(seed)

    def rand_number():
        return HahnNumber({Fraction(rng.randint(-12, 12), rng.randint(1, 4)): float(rng.randint(-5, 5))
                           for _ in range(rng.randint(0, 6))})

    pairs = [(rand_number(), rand_number()) for _ in range(200)]
    yield "mul == mul_naive (200 pairs)", all(mul(a, b) == oracle.mul_naive(a, b) for a, b in pairs)

    table = {}
    for q, i in oracle.enumerate_reduced_fractions(30):
        table.setdefault(i, set()).add(q)
    yield "diagonal blocks 1..30 == gcd scan", all(diagonal_block(i) == table[i] for i in range(1, 31))

    cases = [("geometric", "0.5 + d", 2000), ("exp", "1 + d", 200), ("cos", "0.25 + d", 200)]
    for name, text, m in cases:
        ps = PowerSeries.standard(name)
        x = as_hahn(text)
        main = eval_weak(ps, x, 3, tol)
        ref = oracle.partial_sums(ps, x, m, 3)
        ok = all(abs(main[q] - ref[q]) <= 10 * tol for q in (0, 1, 2))
        yield f"eval_weak {name}({text}) == partial sums", ok

    g = PowerSeries.standard("geometric")
    x = as_hahn("1.5 + d")
    path = oracle.partial_sum_path(g, x, [100, 200, 300], 1)
    yield "geometric(1.5 + d) diverges at d^0", (
        classify(g, x).classification.value == "Diverges" and not oracle.cauchy_at(path, 0, 1e-9))


def cmd_selftest(args):
    rows = list(_selftest_rows(args.seed, args.tol))
    if args.json:
        _emit({"schema": SCHEMA, "checks": [{"name": n, "pass": ok} for n, ok in rows],
               "pass": all(ok for _, ok in rows)})
    else:
        width = max(len(n) for n, _ in rows)
        for name, ok in rows:
            print(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}")
    return 0 if all(ok for _, ok in rows) else 1


# -- driver ---------------------------------------------------------------

def build_parser(tol: float) -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=tol)
    common.add_argument("--cutoff", default=None, help="truncation order, p/q or inf")

    parser = _Parser(prog="hahn", description="Truncated Hahn-field arithmetic and weak topology tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval-expr", parents=[common], help="evaluate an expression in d")
    p.add_argument("expression")
    p.set_defaults(func=cmd_eval_expr)

    p = sub.add_parser("seminorm", parents=[common], help="partition or locally uniform semi-norm")
    p.add_argument("--flavor", "--family", choices=["gamma", "u"], default="gamma")
    p.add_argument("--index", help="prefix index n (gamma) or rational r (u)")
    p.add_argument("--radius", help="rational r (u)")
    p.add_argument("--expr", "--x", required=True, help="the number")
    p.set_defaults(func=cmd_seminorm)

    p = sub.add_parser("metric", parents=[common], help="truncated metric between two numbers")
    p.add_argument("--flavor", "--family", choices=["gamma", "u"], default="gamma")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--k", type=int, default=30)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("partition", parents=[common], help="diagonal partition blocks")
    p.add_argument("--kind", choices=["diagonal"], default="diagonal")
    p.add_argument("--block", type=int)
    p.add_argument("--prefix", type=int)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("witness", parents=[common], help="separation witness")
    p.add_argument("--claim", required=True, choices=["weak-not-valuation", "u-not-weak", "restriction"])
    p.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("check", parents=[common], help="sampled ball-inclusion check")
    p.add_argument("--claim", required=True, choices=["finite-equivalence", "weak-subset-u"])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("radius", parents=[common], help="radius of convergence estimate")
    p.add_argument("--series", required=True)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--window", type=int, default=None)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("eval", parents=[common], help="weak evaluation of a power series")
    p.add_argument("--series", required=True)
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("selftest", parents=[common], help="compare against the brute-force oracles")
    p.set_defaults(func=cmd_selftest)
    return parser


def _fail(code: str, message: str, status: int) -> int:
    print(json.dumps({"schema": SCHEMA, "error": code, "message": message}, sort_keys=True),
          file=sys.stderr)
    return status


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser(default_tol()).parse_args(argv)
        if args.cutoff is not None:
            args.cutoff = as_cutoff(args.cutoff)
        status = args.func(args)
    except UsageError as exc:
        return _fail("usage-error", str(exc), 2)
    except HahnError as exc:
        return _fail(exc.code, str(exc), 1)
    except (ValueError, ZeroDivisionError) as exc:
        return _fail("invalid-argument", str(exc), 2)
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
