"""
Growing FASLAs two dimensions at a time
=======================================

A double extension glues a hyperbolic plane span{e, d} onto a FASLA B.
"""

from fasla.algebra import basis_vector
from fasla.catalog import even_dim_family
from fasla.double_extension import decompose_to_zero, double_extend, reduce_by_ideal
from fasla.sampling import random_extension_params, random_fasla
from fasla.verify import check_fasla

# %%
# Start from a random dimension-4 FASLA and draw admissible data over it.
base = random_fasla(4, seed=7)
p = random_extension_params(base, seed=7)
print("lambda, mu, beta =", p.lam, p.mu, p.beta)
print("x0 =", [str(x) for x in p.x0])

t = double_extend(base, p)
print("dim", t.dim, "passes:", check_fasla(t).passed)

# %%
# The new basis is (e, B, d), so the ideal span{e} sits in slot 0.
n = t.dim
r = reduce_by_ideal(t, basis_vector(n, 0), basis_vector(n, n - 1))
print("recovered data:", r.params == p)
print("recovered base:", r.base.algebra == base.algebra)

# %%
# Data that breaks the rules is refused with a per-condition report.
bad = p.replace(lam=p.mu * 3 + 1)
try:
    double_extend(base, bad)
except ValueError as exc:
    print(type(exc).__name__)

# %%
# The even-dimensional family over an abelian base, n = 3.
big = even_dim_family(3)
steps = decompose_to_zero(big)
print("peeled", len(steps), "planes:", [s.base.dim for s in steps])
