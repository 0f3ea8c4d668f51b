"""How many n <= x have P(n)^2 > n and gcd(P(n) - 1, n) = 1?

P(n) is the largest prime factor.  We count the set in one sieve pass and
split it by the size of P(n).

Run: python demos/02_density_of_A.py
"""
# %%
import math

from weakmult.density import density_table, partition_bound_check

xs = [10**k for k in range(2, 8)]
table = density_table(xs, threads=2)
lo, hi = table.reference.as_floats()
print(f"limit constant in [{lo:.8f}, {hi:.8f}]\n")
print(f"{'x':>10} {'|A|':>9} {'A1':>9} {'A2':>8} {'A3':>6} {'density':>9}")
for r in table.rows:
    print(f"{r.x:>10} {r.count_a:>9} {r.count_a1:>9} {r.count_a2:>8} {r.count_a3:>6} {r.density:>9.6f}")

# %%
# Convergence is slow: the gap to the constant shrinks roughly like 1/loglog x.
for r in table.rows:
    gap = r.density - float(table.reference.midpoint)
    print(f"x={r.x:>9}  gap {gap:+.4f}  gap*loglog x {gap * math.log(math.log(r.x)):+.4f}")

# %%
# A1 carries nearly everything; A2 and A3 stay under their bounds.
for x in xs[1:]:
    rep = partition_bound_check(x, table)
    print(
        f"x={x:>9}  A3 {rep.count_a3:>5} <= {rep.a3_bound:>9.0f}   "
        f"A2 {rep.count_a2:>7} <= {rep.a2_bound:>10.0f}   ok={rep.ok}"
    )
