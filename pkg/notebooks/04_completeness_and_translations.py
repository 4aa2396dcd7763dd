"""
Completeness, etale maps and translations
=========================================
"""

from fractions import Fraction

from fasla.algebra import basis_vector
from fasla.catalog import dim2_family, paper_suite
from fasla.dynamics import (
    NonNilpotentExponential,
    central_translations,
    completeness,
    compose_affine,
    etale_representation,
    symplectic_check,
)

# %%
# Complete exactly when unimodular, across the whole catalog.
for entry in paper_suite():
    r = completeness(entry.triple)
    print(f"{entry.name:28s} {r.verdict:10s} unimodular={r.unimodular}")

# %%
# On d.d = beta e the exponential series stop after two terms.
t = dim2_family(beta=2, lam=0, mu=0)
d = basis_vector(2, 1)
a = etale_representation(t, Fraction(1, 2) * d)
b = etale_representation(t, Fraction(3, 2) * d)
print("Q =", [str(x) for x in a.translation])
print("symplectic:", symplectic_check(a, t.omega))
print("homomorphism:", compose_affine(a, b) == etale_representation(t, 2 * d))

# %%
# For aff(R) the series never stop.
try:
    etale_representation(dim2_family(0, 1, 1), d)
except NonNilpotentExponential as exc:
    print(exc)

# %%
print("central translations:", central_translations(dim2_family(1, 0, 0)))
