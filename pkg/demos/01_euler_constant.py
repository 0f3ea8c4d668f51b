"""Bracketing the density constant prod_p (1 - 1/(p(p-1))) times log 2.

Run: python demos/01_euler_constant.py
"""
# %%
from weakmult.constants import euler_product_partial, reference_density_constant

# The truncated product over p <= y is computed with outward rounding, and the
# tail over p > y costs at most a factor (1 - 2/y).
for y in (10, 100, 10**3, 10**4, 10**5, 10**6):
    b = euler_product_partial(y)
    lo, hi = b.as_floats()
    print(f"y={y:>8}  product in [{lo:.10f}, {hi:.10f}]  width {float(b.width):.2e}")

# %%
# Scaling by log 2 gives the constant the density of A should approach.
brackets = [reference_density_constant(10**k) for k in range(3, 8)]
for b in brackets:
    lo, hi = b.as_floats()
    print(f"y=1e{len(str(b.cutoff_y)) - 1}  constant in [{lo:.10f}, {hi:.10f}]")

# Each bracket sits inside the previous one.
print("nested:", all(a.contains_bracket(b) for a, b in zip(brackets, brackets[1:])))
print("y=1e7 midpoint inside the y=1e6 bracket:", brackets[-1].midpoint in brackets[-2])
