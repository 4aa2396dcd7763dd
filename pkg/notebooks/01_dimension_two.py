"""
The two-dimensional flat affine symplectic Lie algebras
=======================================================

Everything here is exact: entries are Fractions, never floats.
"""

from fractions import Fraction

import numpy as np

from fasla.algebra import basis_vector, commutator_algebra, left_mult_matrix
from fasla.catalog import dim2_family
from fasla.dynamics import completeness
from fasla.verify import check_fasla

e, d = basis_vector(2, 0), basis_vector(2, 1)

# %%
# The family lives on the basis (e, d) with omega(e, d) = 1.  Three numbers
# control it, and lambda must be mu or mu/2.
t = dim2_family(beta=1, lam=0, mu=0)
print(check_fasla(t).to_table())

# only d.d is nonzero here
print("d.d =", [str(x) for x in t.algebra.mul(d, d)])

# %%
# With mu != 0 the bracket becomes that of aff(R): [d, e] = mu e.
for lam, mu in [(1, 1), (1, 2)]:
    a = dim2_family(0, lam, mu).algebra
    br = commutator_algebra(a)
    print(f"lambda={lam} mu={mu}: [d,e] =", [str(x) for x in br.mul(d, e)])

# %%
# Left multiplications are infinitesimally symplectic, so their traces vanish.
# Right multiplications are another story.
for beta, lam, mu in [(1, 0, 0), (0, 1, 1), (0, 1, 2)]:
    r = completeness(dim2_family(beta, lam, mu))
    print((beta, lam, mu), r.verdict, "tr R =", [str(x) for x in r.traces_R])

# %%
# L_d as a matrix.  Columns are images of e and d.
ld = left_mult_matrix(dim2_family(0, 1, 1).algebra, d)
print(np.array(ld, dtype=object))
print("trace:", sum(ld[i, i] for i in range(2)) == Fraction(0))
