"""The growth inequality g(n(1+gamma)x) >= (1 - 5 eps) f(n) g(x), and what iterating it gives.

Run: python demos/04_growth_inequality.py
"""
# %%
from weakmult import arithfn

f = arithfn.power(2.0)
m = arithfn.growth_inequality_check(f, f, n=3, epsilon=0.05, gamma=0.02, x=10.0)
print(f"lhs {m.lhs:.4f}  rhs {m.rhs:.4f}  margin {m.margin:.4f}")

# %%
# Iterating k times: g(n^k (1+gamma)^k x) >= ((1 - 5 eps) f(n))^k g(x).
# With f = g = n^c the implied lower exponent approaches c as eps -> 0.
for eps in (0.1, 0.03, 0.01, 0.001):
    t = arithfn.iterate_growth(f, f, 3, eps, eps / 2, 10.0, 12)
    print(f"eps={eps:<6} holds={t.holds}  implied exponent {t.induced_bound:.5f}")

# %%
t = arithfn.iterate_growth(arithfn.slow_power(), arithfn.slow_power(), 2, 0.1, 0.05, 10.0, 10)
for k, arg, lhs, rhs in t.steps:
    print(f"k={k:>2}  g({arg:.4g}) = {lhs:.4g} >= {rhs:.4g}")

# %%
# The inequality is not automatic: a decreasing g breaks it immediately.
inv = arithfn.ArithmeticFunction("1/x", lambda x: 1 / x, arithfn.EXACT, integer_indexed=False)
bad = arithfn.growth_inequality_check(arithfn.constant(1), inv, 6, 0.1, 0.05, 100.0)
print(f"g=1/x: margin {bad.margin:.5f} holds={bad.holds}")

# %%
# Weak super-multiplicativity in a window [x, (1+eps)x].
# tau(6m) < 0.9 tau(6) tau(m) as soon as gcd(m, 6) > 1, so tau misses about 2/3 of m.
for f in (arithfn.power(1.5), arithfn.divisor_count(), arithfn.seeded_iid(seed=1)):
    (r,) = arithfn.wsm_check(f, 6, 0.1, [10**4])
    print(f"{f.name:>22}: {r.hits}/{r.window_size} hits  fraction {r.fraction:.3f}")
