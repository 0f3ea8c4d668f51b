"""Counting subgroups of index n in Z^r.

a_r(n) is the Dirichlet convolution of 1, n, ..., n^(r-1).  Hermite normal
forms give an independent count for small cases.

Run: python demos/05_subgroup_growth.py
"""
# %%
from weakmult import arithfn, groups

for r in (1, 2, 3, 4):
    s = groups.subgroup_counts_zr(r, 12)
    print(f"r={r}: {list(s.a)}")

oracle = groups.subgroup_counts_hnf_oracle(3, 200)
print("convolution == HNF for r=3, n<=200:", groups.subgroup_counts_zr(3, 200).a == oracle.a)

# %%
# Prime index: (p^r - 1)/(p - 1); only Z itself has exactly one subgroup of every prime index.
for desc in (
    groups.AbelianGroupDescriptor(1, []),
    groups.AbelianGroupDescriptor(2, []),
    groups.AbelianGroupDescriptor(1, [2]),
    groups.AbelianGroupDescriptor(1, [3, 6]),
):
    counts = [groups.prime_index_count(desc, p) for p in (2, 3, 5, 7)]
    print(f"Z^{desc.r} + torsion {desc.torsion}: index 2,3,5,7 -> {counts}")

# %%
s = groups.subgroup_counts_zr(2, 10**6)
rep = groups.coprime_multiplicativity_check(s, [(2, 3), (4, 9), (125, 8), (999, 1000)])
print("multiplicative on coprime pairs:", rep.ok, rep.checked)
for eps in (0.5, 0.2, 0.1):
    g = groups.growth_bound_check(s, eps)
    print(f"a(n) > n^(1+{eps}) for {g.violations} n <= 1e6 (largest {g.largest_violator})")

# %%
# The exponent of a_2 = sigma is 1 = r - 1.
est = arithfn.exponent_profile(arithfn.tabulated(s.as_array(), "a_2"), 10**6)
print(f"sup {est.sup_exponent:.4f}  ess {est.ess_exponent:.4f}")

# %%
print("n with gcd(n, p(p-1)) = 1 and no divisor = 1 mod p, p = 5:")
print([n for n in range(1, 80) if groups.np_condition_check(n, 5)])
