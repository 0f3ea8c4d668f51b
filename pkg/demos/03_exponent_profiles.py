"""Growth exponents log f(n)/log n: the supremum against the essential limit.

For weakly super-multiplicative f with a regular normal order the two agree.
The divisor function shows why the hypotheses matter.

Run: python demos/03_exponent_profiles.py
"""
# %%
from weakmult import arithfn

N = 10**6
for f in (arithfn.power(0.5), arithfn.slow_power(), arithfn.divisor_count(), arithfn.sigma()):
    est = arithfn.exponent_profile(f, N)
    print(
        f"{f.name:>14}: sup {est.sup_exponent:.6f} (at n={est.sup_argmax})  "
        f"ess {est.ess_exponent:.6f} +- {est.ess_spread:.2e}"
    )

# %%
# slow_power: n^(1 - 1/loglog(n+20)).  Both statistics creep towards 1 together.
est = arithfn.exponent_profile(arithfn.slow_power(), N)
print(f"{'N':>8} {'sup':>8} {'ess':>8}")
for cp, sup, ess in est.trajectory:
    print(f"{cp:>8} {sup:8.4f} {ess:8.4f}")

# %%
# Profiling f and 1/f together pins f between two powers of n.
for f in (arithfn.power(2.0), arithfn.sigma()):
    rep = arithfn.reciprocal_sandwich(f, 10**5)
    print(
        f"{f.name:>10}: n^{-rep.reciprocal_profile.sup_exponent:.4f} <= f(n) <= n^{rep.profile.sup_exponent:.4f}"
        f"   exact power: {rep.is_power}"
    )

# %%
# Normal order: n + 1 has normal order n, with exceptions only for n <= 1/eps.
import numpy as np

f = arithfn.tabulated(np.arange(2, 10**4 + 2), "n+1")
for eps in (0.1, 0.01, 0.001):
    print(f"eps={eps}: exceptional fraction {arithfn.normal_order_deviation(f, arithfn.power(1), eps, 10**4)}")
