"""
Cotangent constructions
=======================

B* + B carries a FASLA whenever B is left-symmetric, and more generally
when a commutative product and a 2-cocycle twist it.
"""

import numpy as np

from fasla.catalog import aff_r
from fasla.cotangent import detect_lagrangian_ideal, hess_product, twisted_cotangent
from fasla.sampling import random_cotangent_data
from fasla.verify import check_fasla

# %%
# The classical (Hess) cotangent of aff(R).  Duals come first in the basis.
t = hess_product(aff_r())
print(t.algebra.labels, check_fasla(t).passed)

# %%
# A random twisted cotangent over a 2-dimensional base.
data = random_cotangent_data(2, seed=4)
print("circ nonzero:", any(x != 0 for x in data.circ.flat))
print("f nonzero:   ", any(x != 0 for x in data.f.flat))

big = twisted_cotangent(data)
print("dim", big.dim, "passes:", check_fasla(big).passed)

# %%
# Detection reads the data back from the leading Lagrangian block.
det = detect_lagrangian_ideal(big)
print(det.source, det.data == data)
print(np.array(det.basis_change, dtype=object).shape)
