"""Acceptance suite: one test per criterion.

Each test prints a PASS/FAIL line with its key numbers; the conftest summary
repeats one line per criterion at the end of the run.
"""
import itertools
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import trial_primes
from weakmult import arithfn, cli, constants, density, groups, sieve


def report(number, ok, detail):
    print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")


@pytest.mark.criterion(1, "density constant bracket at y=1e6")
def test_constant_reproduction():
    t0 = time.perf_counter()
    ref = constants.reference_density_constant(10**6)
    elapsed = time.perf_counter() - t0
    fine = constants.reference_density_constant(10**7)
    nest = [constants.reference_density_constant(10**k) for k in (3, 4, 5, 6)]
    width_ok = ref.width <= Fraction(2, 10**6) * ref.upper
    contains = fine.midpoint in ref
    nested = all(a.contains_bracket(b) for a, b in zip(nest, nest[1:]))
    ok = width_ok and contains and nested and elapsed < 10
    lo, hi = ref.as_floats()
    report(1, ok, f"[{lo:.10f}, {hi:.10f}] y=1e7 midpoint {fine.midpoint:.10f} nested={nested} {elapsed:.2f}s")
    assert width_ok
    assert contains
    assert nested
    assert elapsed < 10


@pytest.mark.criterion(2, "sieve counts of A equal trial division for x <= 1e5")
def test_density_oracle_equivalence():
    X = 10**5
    t0 = time.perf_counter()
    fs = sieve.build_factor_sieve(1, X + 1)
    sieve_mask = density._member_mask(fs.numbers(), fs.gpf_array)
    sieve_counts = np.cumsum(sieve_mask)
    brute = np.array([density.is_member_bruteforce(n) for n in range(1, X + 1)])
    brute_counts = np.cumsum(brute)
    xs = [10, 100, 1000, 12345, 54321, X]
    table = density.density_table(xs)
    elapsed = time.perf_counter() - t0
    all_x = bool(np.array_equal(sieve_counts, brute_counts))
    table_ok = all(table.row(x).count_a == brute_counts[x - 1] for x in xs)
    ok = all_x and table_ok and elapsed < 60
    report(2, ok, f"count_A(1e5)={brute_counts[-1]} agree for every x <= 1e5, {elapsed:.1f}s")
    big = density.density_table([10**7]).row(10**7)
    mid = float(table.reference.midpoint)
    print(
        f"[criterion 2, informational] density(1e7)={big.density:.6f}, "
        f"midpoint {mid:.6f}, |diff|={abs(big.density - mid):.4f} (band 0.08)"
    )
    assert all_x and table_ok
    assert elapsed < 60


@pytest.mark.criterion(3, "partition bounds for A2 and A3")
def test_partition_bounds():
    xs = [10**k for k in range(2, 8)]
    table = density.density_table(xs)
    reports = {x: density.partition_bound_check(x, table) for x in xs}
    a3_ok = all(r.a3_ok for r in reports.values())
    a2_ok = all(reports[x].a2_ok for x in (10**5, 10**6, 10**7))
    report(
        3,
        a3_ok and a2_ok,
        "; ".join(f"x={x:.0e}: A3 {r.count_a3}<={r.a3_bound:.0f} A2 {r.count_a2}<={r.a2_bound:.0f}" for x, r in reports.items()),
    )
    assert a3_ok
    assert a2_ok


@pytest.mark.criterion(4, "Brun-Titchmarsh suite")
def test_brun_titchmarsh():
    rep = sieve.brun_titchmarsh_check([10**3, 10**4, 10**5, 10**6], qmax=100, a=1)
    qs = {e.q for e in rep.entries}
    ok = rep.ok and len(rep.violations) == 0 and qs == set(range(1, 101))
    report(4, ok, f"{len(rep.entries)} (x, q) pairs, {len(rep.violations)} violations, min slack {rep.min_slack:.3g}")
    assert all(e.q * e.q < e.x for e in rep.entries)
    assert ok


@pytest.mark.criterion(5, "progression sum increment for d=3")
def test_mertens_increment():
    diff = sieve.mertens_progression_sum(10**6, 3) - sieve.mertens_progression_sum(10**5, 3)
    ok = abs(diff - 0.0912) <= 0.03
    report(5, ok, f"increment {diff:.5f} vs 0.0912 +- 0.03")
    assert ok


@pytest.mark.criterion(6, "subgroup growth: oracle, prime formula, multiplicativity")
def test_subgroup_growth():
    hnf_ok = all(
        groups.subgroup_counts_zr(r, 200).a == groups.subgroup_counts_hnf_oracle(r, 200).a for r in range(1, 5)
    )
    primes = trial_primes(10**4)
    series = {r: groups.subgroup_counts_zr(r, 10**4) for r in range(1, 6)}
    prime_ok = all(series[r][p] == (p**r - 1) // (p - 1) for r in series for p in primes)
    rng = random.Random(2024)
    pairs = []
    while len(pairs) < 1000:
        n = rng.randint(1, 100)
        m = rng.randint(1, 10**4 // n)
        if math.gcd(n, m) == 1:
            pairs.append((n, m))
    mult = [groups.coprime_multiplicativity_check(series[r], pairs) for r in series]
    mult_ok = all(m.ok and len(m.checked) == 1000 for m in mult)
    report(6, hnf_ok and prime_ok and mult_ok, f"hnf={hnf_ok} primes<=1e4 r<=5: {prime_ok} 1000 pairs x 5 ranks: {mult_ok}")
    assert hnf_ok
    assert prime_ok
    assert mult_ok


def _nondecreasing(values):
    return all(b >= a for a, b in zip(values, values[1:]))


@pytest.mark.criterion(7, "exponent profiles: power, slow_power, divisor_count")
def test_exponent_profiles():
    N = 10**6
    sq = arithfn.exponent_profile(arithfn.power(0.5), N)
    sq_ok = abs(sq.sup_exponent - 0.5) <= 1e-12 and abs(sq.ess_exponent - 0.5) <= 1e-12

    sp = arithfn.exponent_profile(arithfn.slow_power(), N)
    sups = [s for _, s, _ in sp.trajectory]
    esss = [e for _, _, e in sp.trajectory]
    sp_ok = (
        sp.sup_exponent - sp.ess_exponent < 0.05
        and _nondecreasing(sups)
        and _nondecreasing(esss)
        and max(sups + esss) < 1
    )

    tau = arithfn.exponent_profile(arithfn.divisor_count(), N)
    tau_ok = tau.sup_exponent == 1.0 and tau.ess_exponent < 0.2

    report(
        7,
        sq_ok and sp_ok and tau_ok,
        f"power(0.5) sup={sq.sup_exponent!r} ess={sq.ess_exponent!r}; "
        f"slow_power sup={sp.sup_exponent:.4f} ess={sp.ess_exponent:.4f}; "
        f"divisor_count sup={tau.sup_exponent} ess={tau.ess_exponent:.4f}",
    )
    assert sq_ok
    assert sp_ok
    assert tau_ok


def _growth_grid():
    ns = [1, 2, 3, 4, 5, 7, 10, 16, 50, 100]
    epss = [0.001, 0.01, 0.05, 0.1, 0.19]
    ratios = [0.1, 0.3, 0.7, 1.0]
    xs = [1.0, 7.5, 100.0, 1e4, 1e6]
    return list(itertools.product(ns, epss, ratios, xs))


@pytest.mark.criterion(8, "growth inequality and its iteration over a 1000-point grid")
def test_growth_suite():
    grid = _growth_grid()
    assert len(grid) == 1000
    funcs = [arithfn.power(c) for c in (0.0, 0.5, 1.0, 2.0)] + [arithfn.slow_power()]
    single = iterated = 0
    for f in funcs:
        for n, eps, ratio, x in grid:
            gamma = eps * ratio
            if not arithfn.growth_inequality_check(f, f, n, eps, gamma, x).holds:
                single += 1
            if not arithfn.iterate_growth(f, f, n, eps, gamma, x, 8).holds:
                iterated += 1
    ok = single == 0 and iterated == 0
    report(8, ok, f"{len(funcs)} functions x {len(grid)} points: {single} single, {iterated} iterated violations")
    assert single == 0
    assert iterated == 0


@pytest.mark.criterion(9, "weak super-multiplicativity windows")
def test_wsm_suite():
    xs = [10**3, 3 * 10**3, 10**4, 54321.5, 10**5, 10**6]
    ns = [1, 2, 3, 6, 10, 97]
    mult = [arithfn.power(c) for c in (0.0, 0.5, 1.0, 2.0)] + [arithfn.constant(1.0), arithfn.slow_power()]
    fractions = [
        r.fraction for f in mult for n in ns for eps in (0.05, 0.1, 0.5) for r in arithfn.wsm_check(f, n, eps, xs)
    ]
    mult_ok = all(fr == 1.0 for fr in fractions)

    iid_x = [10**3 * 1.37**k for k in range(30)]
    iid = [
        r.fraction
        for seed in range(5)
        for n in (2, 3, 5, 7, 10)
        for r in arithfn.wsm_check(arithfn.seeded_iid(seed=seed), n, 0.1, iid_x)
    ]
    positive = sum(1 for fr in iid if fr is not None and fr > 0) / len(iid)
    iid_ok = positive >= 0.95
    report(9, mult_ok and iid_ok, f"{len(fractions)} multiplicative windows all 1: {mult_ok}; iid positive on {positive:.1%} of {len(iid)}")
    assert mult_ok
    assert iid_ok


CLI_RUNS = [
    ["density-table", "--checkpoints", "1000,100000,1000000"],
    ["constant", "--y", "100000"],
    ["wsm", "--function", "iid", "--seed", "12345"],
    ["exponent", "--function", "slow_power", "--n", "100000"],
    ["growth-demo", "--function", "slow_power"],
    ["subgroups", "--r", "3", "--n", "500"],
    ["bt-check", "--checkpoints", "1000,10000,100000"],
    ["mertens", "--checkpoints", "1000,100000"],
]


def _run_cli(args, env_threads=None):
    env = dict(os.environ)
    env.pop(cli.THREADS_ENV, None)
    if env_threads is not None:
        env[cli.THREADS_ENV] = str(env_threads)
    p = subprocess.run([sys.executable, "-m", "weakmult", *args], capture_output=True, env=env)
    assert p.returncode == 0, p.stderr
    return p.stdout


@pytest.mark.criterion(10, "byte-identical CLI output across repeats and thread counts")
def test_cli_determinism():
    mismatched = []
    for args in CLI_RUNS:
        base = _run_cli(args)
        variants = [_run_cli(args), _run_cli(args + ["--threads", "4"]), _run_cli(args, env_threads=3)]
        if any(v != base for v in variants):
            mismatched.append(args[0])
    ok = not mismatched
    report(10, ok, f"{len(CLI_RUNS)} subcommands x 4 runs, mismatches: {mismatched or 'none'}")
    assert ok
