"""Command-line interface: ``ewenspitman {pmf,table,verify}``.

Rationals are printed as ``p/q`` with a 12-place decimal beside them.
Exit status is 0 on success, 1 when a verification fails and 2 for usage
errors (bad syntax, parameters out of range, refused routes).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import ewens_pitman as ep
from . import riordan as rd
from . import series as sr
from . import verify as vf
from .errors import EwensPitmanError, IdentityViolation, OracleBoundExceeded, OrderTooLarge
from .partitions import Partition

TABLE_KINDS = (
    "marginal-length",
    "moment-length",
    "moment-sizes",
    "cond-moment",
    "stirling",
    "riordan-entry",
    "ftra",
)


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} (use p/q)")


def parse_partition(text: str) -> Partition:
    """Comma-separated weakly decreasing parts; anything else is rejected."""
    try:
        parts = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a partition: {text!r} (expected e.g. 4,2,1)")
    if not parts or any(x <= 0 for x in parts):
        raise argparse.ArgumentTypeError(f"parts must be positive integers: {text!r}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        hint = ",".join(map(str, sorted(parts, reverse=True)))
        raise argparse.ArgumentTypeError(
            f"parts must be in descending order: {text!r} (did you mean {hint}?)"
        )
    return Partition(parts)


def parse_orders(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"orders must be comma-separated integers: {text!r}")
    if any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError("orders must be nonnegative")
    return vals


def decimal_string(x: Fraction, places: int = 12) -> str:
    """Exact round-half-even to ``places`` decimals."""
    q = round(Fraction(x) * 10**places)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, Partition):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, sr.ThetaPoly):
        return str(v)
    return v


def record(query: dict, value, route: str, verified: bool, error: str | None = None) -> dict:
    rec = {
        "query": _jsonable(query),
        "value": None if value is None else str(value),
        "decimal": None if value is None else decimal_string(value),
        "route": route,
        "verified": verified,
    }
    if error is not None:
        rec["error"] = error
    return rec


def _query_text(q: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in q.items())


def render(records: list[dict], fmt: str, single: bool = False) -> str:
    if fmt == "json":
        return json.dumps(records[0] if single else records, indent=None if single else 1)
    if fmt == "csv":
        keys = list(dict.fromkeys(k for r in records for k in r["query"]))
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys + ["value", "decimal", "route", "verified", "error"])
        for r in records:
            w.writerow(
                [r["query"].get(k, "") for k in keys]
                + [r["value"] or "", r["decimal"] or "", r["route"], r["verified"], r.get("error", "")]
            )
        return buf.getvalue().rstrip("\n")
    lines = []
    for r in records:
        if r.get("error"):
            body = f"error: {r['error']}"
        else:
            body = f"{r['value']}\t{r['decimal']}"
        lines.append(body if single else f"{_query_text(r['query'])}\t{body}")
    return "\n".join(lines)


# --- named series --------------------------------------------------------

def _series_registry(alpha: Fraction, theta: Fraction) -> dict[str, Callable[[int], sr.ExpSeries]]:
    def ep_h(N):
        if alpha == 0:
            return sr.log1p_series(-1, N) * -1
        return (1 - sr.binomial_series(alpha, -1, N)) / alpha

    def ep_c(N):
        return sr.ExpSeries([sr.rising_factorial(theta, j, alpha) for j in range(N + 1)], N)

    return {
        "one": lambda N: sr.constant_series(1, N),
        "exp": lambda N: sr.exp_series(1, N),
        "exp-theta": lambda N: sr.exp_series(theta, N),
        "id": sr.identity_series,
        "expm1": lambda N: sr.exp_series(1, N) - 1,
        "geometric": lambda N: sr.ExpSeries.from_ordinary([1] * (N + 1), N),
        "log": lambda N: sr.log1p_series(1, N),
        "neglog": lambda N: sr.log1p_series(-1, N) * -1,
        "ep-h": ep_h,
        "ep-c": ep_c,
        "laguerre-d": lambda N: sr.ExpSeries.from_ordinary([1] * (N + 1), N),
        "laguerre-h": lambda N: sr.ExpSeries.from_ordinary([0] + [-1] * N, N),
    }


SERIES_HELP = (
    "one, exp, exp-theta, id, expm1, geometric (1/(1-t)), log (log(1+t)), "
    "neglog (-log(1-t)), ep-h ((1-(1-t)^alpha)/alpha), ep-c ((1-alpha t)^(-theta/alpha)), "
    "laguerre-d (-1/(t-1)), laguerre-h (t/(t-1))"
)


# --- commands --------------------------------------------------------------

def _params(args) -> ep.EPParams:
    return ep.EPParams(args.alpha, args.theta)


def cmd_pmf(args) -> int:
    p = _params(args)
    value = ep.pmf(p, args.lam, route=args.route, verify=args.verify)
    query = {"lambda": str(args.lam), "alpha": p.alpha, "theta": p.theta}
    route = "all" if args.verify else args.route
    print(render([record(query, value, route, args.verify)], args.format, single=True))
    return 0


def _row(query: dict, compute: Callable[[], Fraction], route: str, verified: bool, strict: bool) -> dict:
    try:
        return record(query, compute(), route, verified)
    except (OracleBoundExceeded, OrderTooLarge, sr.OrderExceeded) as e:
        if strict:
            raise UsageError(str(e))
        return record(query, None, route, False, error=str(e))


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"table {args.kind} needs --{name.replace('_', '-')}")


def _table_rows(args) -> list[dict]:
    kind, strict, verify = args.kind, args.strict, args.verify
    rows = []
    if kind in ("marginal-length", "moment-length", "moment-sizes", "cond-moment"):
        p = _params(args)
        base = {"alpha": p.alpha, "theta": p.theta}
    if kind == "marginal-length":
        _need(args, "n")
        route = args.route or "ftra"
        for l in range(1 if args.n else 0, args.n + 1):
            rows.append(_row(dict(base, n=args.n, l=l),
                             lambda l=l: ep.marginal_length(p, args.n, l, route=route, verify=verify),
                             "all" if verify else route, verify, strict))
    elif kind == "moment-length":
        _need(args, "n")
        route = args.route or "stirling"
        for k in range(1, (args.k or args.n) + 1):
            rows.append(_row(dict(base, n=args.n, k=k),
                             lambda k=k: ep.moment_length(p, args.n, k, route=route, verify=verify),
                             "all" if verify else route, verify, strict))
    elif kind == "moment-sizes":
        _need(args, "n")
        route = args.route or "closed"
        vecs = [args.orders] if args.orders else list(vf.order_vectors(args.n, args.smax or min(args.n, 4)))
        for vec in vecs:
            rows.append(_row(dict(base, n=args.n, orders=",".join(map(str, vec))),
                             lambda vec=vec: ep.joint_moment_sizes(p, args.n, vec, route=route, verify=verify),
                             "all" if verify else route, verify, strict))
    elif kind == "cond-moment":
        _need(args, "mu", "m")
        route = args.route or "closed"
        vecs = [args.orders] if args.orders else list(vf.order_vectors(args.m, args.smax or args.m))
        for vec in vecs:
            def compute(vec=vec):
                q = ep.ConditionalQuery(args.mu, args.m, vec)
                return ep.conditional_moment(p, q, route=route, verify=verify)

            rows.append(_row(dict(base, mu=str(args.mu), m=args.m, orders=",".join(map(str, vec))),
                             compute, "all" if verify else route, verify, strict))
    elif kind == "stirling":
        _need(args, "a", "b", "n")
        prm = rd.GStirlingParams(args.a, args.b, args.c if args.c is not None else 0)
        route = "both" if verify else (args.route or "riordan")
        for n in range(args.n + 1):
            for l in range(n + 1):
                rows.append(_row({"a": prm.a, "b": prm.b, "c": prm.c, "n": n, "l": l},
                                 lambda n=n, l=l: rd.gstirling(prm, n, l, route=route),
                                 route, verify, strict))
    elif kind in ("riordan-entry", "ftra"):
        _need(args, "d", "h", "n")
        reg = _series_registry(args.alpha, args.theta)
        for name in (args.d, args.h) + ((args.c_series,) if kind == "ftra" else ()):
            if name is None:
                raise UsageError("table ftra needs --series (the sequence c)")
            if name not in reg:
                raise UsageError(f"unknown series {name!r}; choose from {SERIES_HELP}")
        order = args.order if args.order is not None else max(args.n, 1)
        if order < args.n:
            raise UsageError(f"--order {order} is below --n {args.n}")
        R = rd.ExpRiordan(reg[args.d](order), reg[args.h](order))
        if kind == "riordan-entry":
            for k in range(args.n + 1):
                rows.append(_row({"d": args.d, "h": args.h, "n": args.n, "k": k},
                                 lambda k=k: R.entry(args.n, k), "riordan", False, strict))
        else:
            c = reg[args.c_series](order)
            for n in range(args.n + 1):
                rows.append(_row({"d": args.d, "h": args.h, "c": args.c_series, "n": n},
                                 lambda n=n: rd.ftra(R, c, n, verify=verify), "ftra", verify, strict))
    return rows


def cmd_table(args) -> int:
    rows = _table_rows(args)
    print(render(rows, args.format))
    return 0


def cmd_verify(args) -> int:
    names = args.only or list(vf.CHECKS)
    unknown = [n for n in names if n not in vf.CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; available: {', '.join(vf.CHECKS)}")
    ep.ORACLE_BOUND = max(args.oracle_bound, args.max_n)
    results = []
    failed = None
    for name in names:
        res = vf.run_check(name, args.max_n)
        results.append(res)
        if args.format != "json":
            print(res.line(), flush=True)
        if not res.passed and failed is None:
            failed = res
    if args.format == "json":
        print(json.dumps([
            {"check": r.name, "passed": r.passed, "seconds": round(r.seconds, 3), "cases": r.cases,
             "counterexample": _jsonable(r.counterexample)}
            for r in results
        ], indent=1))
    if failed is not None:
        cx = failed.counterexample
        print(
            f"counterexample in {failed.name}: {_jsonable(cx['context'])}\n"
            f"  left  = {_jsonable(cx['left'])}\n  right = {_jsonable(cx['right'])}",
            file=sys.stderr,
        )
        return 1
    if args.format != "json":
        print(f"all {len(results)} checks passed")
    return 0


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=parse_rational, default=Fraction(1, 2), help="0 <= alpha < 1 (default 1/2)")
    common.add_argument("--theta", type=parse_rational, default=Fraction(1), help="theta > -alpha (default 1)")
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--oracle-bound", type=int, default=ep.ORACLE_BOUND,
                        help="largest n for brute-force enumeration (default 12)")
    common.add_argument("--order", type=int, default=None, help="truncation order for series tables")

    parser = argparse.ArgumentParser(prog="ewenspitman", description="Exact Ewens-Pitman statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    pp = sub.add_parser("pmf", parents=[common], help="probability of one partition")
    pp.add_argument("--lambda", dest="lam", type=parse_partition, required=True, help="e.g. 4,2,1")
    pp.add_argument("--route", choices=ep.PMF_ROUTES, default="closed")
    pp.add_argument("--verify", action="store_true", help="compute every route and require agreement")
    pp.set_defaults(func=cmd_pmf)

    pt = sub.add_parser("table", parents=[common], help="a grid of one statistic")
    pt.add_argument("kind", choices=TABLE_KINDS)
    pt.add_argument("--n", type=int)
    pt.add_argument("--k", type=int, help="largest moment order (moment-length)")
    pt.add_argument("--orders", type=parse_orders, help="k_1,k_2,... (moment-sizes, cond-moment)")
    pt.add_argument("--smax", type=int, help="largest s = sum j k_j when --orders is omitted")
    pt.add_argument("--mu", type=parse_partition, help="observed partition (cond-moment)")
    pt.add_argument("--m", type=int, help="additional draws (cond-moment)")
    pt.add_argument("--a", type=parse_rational)
    pt.add_argument("--b", type=parse_rational)
    pt.add_argument("--c", type=parse_rational)
    pt.add_argument("--d", help=f"series name: {SERIES_HELP}")
    pt.add_argument("--h", help="series name (same choices as --d)")
    pt.add_argument("--series", dest="c_series", help="sequence c for ftra (same choices as --d)")
    pt.add_argument("--route", help="route of the underlying statistic")
    pt.add_argument("--verify", action="store_true")
    pt.add_argument("--strict", action="store_true", help="abort on the first out-of-bound row")
    pt.set_defaults(func=cmd_table)

    pv = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    pv.add_argument("--max-n", type=int, default=10)
    pv.add_argument("--only", nargs="+", metavar="CHECK", help="run only these checks")
    pv.set_defaults(func=cmd_verify)
    return parser


_NEG = re.compile(r"^-\d")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--b -1/2`` into ``--b=-1/2``; argparse would read -1/2 as a flag."""
    out: list[str] = []
    for tok in argv:
        if out and _NEG.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = _join_negative_values(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = ep.ORACLE_BOUND
    ep.ORACLE_BOUND = args.oracle_bound
    try:
        return args.func(args)
    except IdentityViolation as e:
        print(f"verification failed: {e}\n  left  = {e.left}\n  right = {e.right}", file=sys.stderr)
        return 1
    except (UsageError, EwensPitmanError, ValueError, ZeroDivisionError) as e:
        print(f"{parser.prog}: error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    finally:
        ep.ORACLE_BOUND = saved


if __name__ == "__main__":
    sys.exit(main())
