"""Batch front-end: ``weakmult <subcommand> [flags]``.

Every run writes one CSV or JSON document (to ``--out`` or stdout) whose
header echoes the tool version, the configuration and the seed.  Output is a
pure function of the configuration; ``--threads`` only changes speed.

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import arithfn, constants, density, groups, reporting, sieve
from .errors import DomainError, PartialResultError

THREADS_ENV = "WEAKMULT_THREADS"


def _int(text: str) -> int:
    """Integer that also accepts forms like 1e6 and 10**6."""
    t = text.strip().replace("_", "")
    try:
        if "**" in t:
            base, exp = t.split("**")
            return int(base) ** int(exp)
        if "e" in t.lower():
            v = float(t)
            if v != int(v):
                raise ValueError
            return int(v)
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _int_list(text: str) -> list[int]:
    return [_int(t) for t in text.split(",") if t.strip()]


def parse_function(text: str, seed: int) -> arithfn.ArithmeticFunction:
    """power:C | slow_power | divisor_count | sigma | constant:C | iid | subgroups:R"""
    name, _, arg = text.partition(":")
    if name == "power":
        return arithfn.power(float(arg or 1))
    if name == "slow_power":
        return arithfn.slow_power()
    if name == "divisor_count":
        return arithfn.divisor_count()
    if name == "sigma":
        return arithfn.sigma()
    if name == "constant":
        return arithfn.constant(float(arg or 1))
    if name == "iid":
        return arithfn.seeded_iid(seed=seed)
    if name == "subgroups":
        r = int(arg or 2)
        return _subgroup_function(r)
    raise DomainError(f"unknown function {text!r}")


def _subgroup_function(r: int) -> arithfn.ArithmeticFunction:
    cache: dict[int, np.ndarray] = {}

    def func(n):
        n = np.asarray(n, dtype=np.int64)
        top = max(1024, 1 << (int(n.max(initial=1)) - 1).bit_length())
        if top not in cache:
            cache[top] = groups.subgroup_counts_zr(r, top).as_array().astype(np.float64)
        return cache[top][n - 1]

    return arithfn.ArithmeticFunction(f"subgroups(r={r})", func, arithfn.TABULATED)


# ---------------------------------------------------------------------------
# subcommands; each returns (params, result, checkpoints, flags, columns, rows)


def cmd_density_table(a):
    if a.max is not None:
        capacity = a.max
    else:
        capacity = a.checkpoints[-1] if a.checkpoints else 10**6
    checkpoints = a.checkpoints or [10**k for k in range(2, 10) if 10**k <= capacity]
    params = {"checkpoints": checkpoints, "max": capacity, "y": a.y}
    flags = []
    try:
        table = density.density_table(
            checkpoints, capacity=capacity, threads=a.threads, reference_y=a.y, progress=a.progress
        )
    except PartialResultError as e:
        table = e.partial
        flags.append(f"partial: {e}")
        print(f"weakmult density-table: {e}", file=sys.stderr)
    reports = [density.partition_bound_check(r.x, table) for r in table.rows if r.x >= 100]
    return (
        params,
        {"rows": table.rows, "reference": table.reference, "partition": reports},
        [r.x for r in table.rows],
        flags,
        density.DensityTable.COLUMNS,
        table.records(),
    )


def cmd_constant(a):
    euler = constants.euler_product_partial(a.y)
    ref = constants.reference_density_constant(a.y)
    rows = []
    for name, b in (("euler_product", euler), ("density_constant", ref)):
        lo, hi = b.as_floats()
        rows.append((name, b.cutoff_y, lo, hi, float(b.width), b.midpoint))
    result = {
        name: {"lower": lo, "upper": hi, "width": w, "midpoint": m, "cutoff_y": y}
        for name, y, lo, hi, w, m in rows
    }
    return {"y": a.y}, result, [], [], ("constant", "y", "lower", "upper", "width", "midpoint"), rows


def cmd_wsm(a):
    f = parse_function(a.function, a.seed)
    xs = a.checkpoints or [10**3, 2 * 10**3, 5 * 10**3, 10**4]
    reports = arithfn.wsm_check(f, a.n, a.eps, xs)
    params = {"function": f.name, "n": a.n, "eps": a.eps, "xs": xs}
    rows = [
        (r.x, r.window[0], r.window[1], r.window_size, r.hits, r.fraction, r.delta_x) for r in reports
    ]
    flags = sorted({fl for r in reports for fl in r.flags})
    cols = ("x", "window_lo", "window_hi", "window_size", "hits", "fraction", "delta_x")
    return params, reports, xs, flags, cols, rows


def cmd_exponent(a):
    f = parse_function(a.function, a.seed)
    est = arithfn.exponent_profile(f, a.n)
    params = {"function": f.name, "N": a.n}
    rows = [(cp, s, e) for cp, s, e in est.trajectory]
    return params, est, [cp for cp, _, _ in est.trajectory], [], ("checkpoint", "sup", "ess"), rows


def cmd_growth_demo(a):
    f = parse_function(a.function, a.seed)
    traj = arithfn.iterate_growth(f, f, a.n, a.eps, a.gamma, a.x, a.k)
    params = {"function": f.name, "n": a.n, "eps": a.eps, "gamma": a.gamma, "x": a.x, "k_max": a.k}
    rows = [(k, arg, lhs, rhs, lhs >= rhs) for k, arg, lhs, rhs in traj.steps]
    flags = ["truncated"] if traj.truncated else []
    cols = ("k", "argument", "lhs", "rhs", "holds")
    return params, traj, [k for k, *_ in traj.steps], flags, cols, rows


def cmd_subgroups(a):
    series = groups.subgroup_counts_zr(a.r, a.n)
    params = {"r": a.r, "N": a.n}
    primes = sieve.primes_up_to(a.n).tolist()
    prime_formula = all(series[p] == (p**a.r - 1) // (p - 1) for p in primes)
    result = {
        "a": list(series.a),
        "prime_formula_holds": prime_formula,
        "growth_bound": groups.growth_bound_check(series, a.eps),
    }
    return params, result, [], [], ("n", "a_n"), series.rows()


def cmd_bt_check(a):
    xs = a.checkpoints or [10**3, 10**4, 10**5, 10**6]
    qmax = a.n or 100
    rep = sieve.brun_titchmarsh_check(xs, qmax=qmax)
    rows = [(e.x, e.q, e.count, e.bound, e.ok) for e in rep.entries]
    flags = [] if rep.ok else ["violations"]
    result = {"checked": len(rep.entries), "ok": rep.ok, "violations": rep.violations, "min_slack": rep.min_slack}
    return {"xs": xs, "qmax": qmax}, result, xs, flags, ("x", "q", "count", "bound", "ok"), rows


def cmd_mertens(a):
    xs = a.checkpoints or [10**3, 10**4, 10**5, 10**6]
    d = a.n or 3
    phi = sieve.euler_phi(d)
    rows = []
    for x in xs:
        s = sieve.mertens_progression_sum(x, d)
        rows.append((x, d, s, math.log(math.log(x)) / phi))
    result = {"sums": rows}
    return {"xs": xs, "d": d}, result, xs, [], ("x", "d", "sum", "loglog_over_phi"), rows


COMMANDS = {
    "density-table": cmd_density_table,
    "constant": cmd_constant,
    "wsm": cmd_wsm,
    "exponent": cmd_exponent,
    "growth-demo": cmd_growth_demo,
    "subgroups": cmd_subgroups,
    "bt-check": cmd_bt_check,
    "mertens": cmd_mertens,
}

_DEFAULT_FORMAT = {"constant": "json", "wsm": "json", "exponent": "json", "growth-demo": "json"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max", type=_int, default=None, help="largest x to sieve (density-table)")
    common.add_argument("--checkpoints", type=_int_list, default=None, help="comma-separated x values")
    common.add_argument("--y", type=_int, default=constants.DEFAULT_CUTOFF, help="Euler product cutoff")
    common.add_argument("--r", type=_int, default=2, help="rank of Z^r")
    common.add_argument("--n", type=_int, default=None, help="n, N, q-max or modulus d, by subcommand")
    common.add_argument("--eps", type=float, default=0.1)
    common.add_argument("--gamma", type=float, default=0.05)
    common.add_argument("--x", type=float, default=10.0, help="starting point for growth-demo")
    common.add_argument("--k", type=_int, default=20, help="iterations for growth-demo")
    common.add_argument("--function", default=None, help="power:C, slow_power, divisor_count, sigma, constant:C, iid, subgroups:R")
    common.add_argument("--seed", type=_int, default=0)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--threads", type=_int, default=None)
    common.add_argument("--progress", action="store_true", help="progress lines on stderr")

    parser = argparse.ArgumentParser(prog="weakmult", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


_SUBCOMMAND_DEFAULTS = {
    "wsm": {"n": 5, "function": "iid"},
    "exponent": {"n": 10**5, "function": "slow_power"},
    "growth-demo": {"n": 2, "function": "slow_power"},
    "subgroups": {"n": 100},
}


def _resolve_threads(value):
    if value is not None:
        return max(1, value)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in _SUBCOMMAND_DEFAULTS.get(args.command, {}).items():
        if getattr(args, key) is None:
            setattr(args, key, value)
    fmt = args.format or _DEFAULT_FORMAT.get(args.command, "csv")
    try:
        args.threads = _resolve_threads(args.threads)
        params, result, checkpoints, flags, columns, rows = COMMANDS[args.command](args)
    except DomainError as e:
        print(f"weakmult {args.command}: {e}", file=sys.stderr)
        return 1
    params = dict(params, format=fmt)
    if fmt == "json":
        text = reporting.dumps_json(
            reporting.envelope(args.command, params, args.seed, result, checkpoints, flags)
        )
    else:
        text = reporting.dumps_csv(
            columns, rows, reporting.header(args.command, params, args.seed), flags
        )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if any(fl.startswith("partial") for fl in flags) else 0


if __name__ == "__main__":
    sys.exit(main())
