"""Finite-dimensional algebras, symplectic forms and their derived maps.

The structure tensor ``c`` of an :class:`Algebra` follows the convention
``e_i . e_j = sum_k c[i, j, k] e_k``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import as_rational, exact_einsum, exact_nullspace, inverse, zeros

__all__ = [
    "Algebra",
    "SymplecticForm",
    "FaslaTriple",
    "basis_vector",
    "left_mult_matrix",
    "right_mult_matrix",
    "ad_matrix",
    "commutator_algebra",
    "omega_perp",
    "standard_omega",
    "hyperbolic_gram",
    "adjoint",
    "change_basis",
]


def _frozen(a):
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Algebra:
    """A bilinear product on Q^n given by its structure tensor."""

    product: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        c = as_rational(self.product)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            # allow the empty algebra, which numpy flattens oddly
            if c.size == 0:
                c = np.empty((0, 0, 0), dtype=object)
            else:
                raise ValueError(f"structure tensor must be n x n x n, got {c.shape}")
        object.__setattr__(self, "product", _frozen(c))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != c.shape[0]:
                raise ValueError("one label per basis vector")
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self):
        return self.product.shape[0]

    @classmethod
    def zero(cls, n, labels=None):
        return cls(zeros((n, n, n)), labels)

    @classmethod
    def from_table(cls, n, table, labels=None):
        """Build from a sparse ``{(i, j): {k: coeff}}`` multiplication table."""
        c = zeros((n, n, n))
        for (i, j), out in table.items():
            for k, v in out.items():
                c[i, j, k] = Fraction(v)
        return cls(c, labels)

    def mul(self, x, y):
        """Product of two coordinate vectors."""
        return exact_einsum("i,j,ijk->k", np.asarray(x, dtype=object),
                         np.asarray(y, dtype=object), self.product)

    def __eq__(self, other):
        return (isinstance(other, Algebra) and self.product.shape == other.product.shape
                and bool(np.all(self.product == other.product)))

    def __hash__(self):
        return hash(tuple(self.product.flat))


@dataclass(frozen=True, eq=False)
class SymplecticForm:
    """A skew-symmetric bilinear form ``omega(x, y) = x^T G y``.

    Nondegeneracy is not enforced here; see :func:`fasla.verify.check_nondegenerate`.
    """

    gram: np.ndarray

    def __post_init__(self):
        g = as_rational(self.gram)
        if g.size == 0:
            g = np.empty((0, 0), dtype=object)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError(f"Gram matrix must be square, got {g.shape}")
        if not np.all(g == -g.T):
            raise ValueError("Gram matrix is not skew-symmetric")
        object.__setattr__(self, "gram", _frozen(g))

    @property
    def dim(self):
        return self.gram.shape[0]

    def __call__(self, x, y):
        return np.asarray(x, dtype=object) @ self.gram @ np.asarray(y, dtype=object)

    def __eq__(self, other):
        return (isinstance(other, SymplecticForm) and self.gram.shape == other.gram.shape
                and bool(np.all(self.gram == other.gram)))

    def __hash__(self):
        return hash(tuple(self.gram.flat))


@dataclass(frozen=True)
class FaslaTriple:
    """An algebra together with a symplectic form.

    The FASLA axioms are not checked on construction; run
    :func:`fasla.verify.check_fasla` for that.
    """

    algebra: Algebra
    omega: SymplecticForm
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.algebra.dim != self.omega.dim:
            raise ValueError(
                f"algebra has dim {self.algebra.dim} but form has dim {self.omega.dim}")

    @property
    def dim(self):
        return self.algebra.dim


def basis_vector(n, i):
    v = zeros(n)
    v[i] = Fraction(1)
    return v


def _check_vec(a, x):
    x = np.asarray(x, dtype=object)
    if x.shape != (a.dim,):
        raise ValueError(f"vector of length {x.shape} does not match dim {a.dim}")
    return x


def left_mult_matrix(a, x):
    """Matrix of ``y -> x . y`` (columns are images of basis vectors)."""
    x = _check_vec(a, x)
    # M[k, j] = sum_i x_i c[i, j, k]
    return exact_einsum("i,ijk->kj", x, a.product)


def right_mult_matrix(a, x):
    """Matrix of ``y -> y . x``."""
    x = _check_vec(a, x)
    return exact_einsum("j,ijk->ki", x, a.product)


def ad_matrix(a, x):
    return left_mult_matrix(a, x) - right_mult_matrix(a, x)


def commutator_algebra(a):
    """The algebra with product ``[x, y] = x.y - y.x``."""
    c = a.product
    return Algebra(c - c.transpose(1, 0, 2), a.labels)


def omega_perp(omega, subspace):
    """Basis of the omega-orthogonal of ``span(subspace)``."""
    n = omega.dim
    rows = []
    for v in subspace:
        v = np.asarray(v, dtype=object)
        if v.shape != (n,):
            raise ValueError("vector length does not match the form")
        rows.append(v @ omega.gram)
    if not rows:
        return exact_nullspace(zeros((0, n)))
    return exact_nullspace(np.array(rows, dtype=object))


def standard_omega(n):
    """Darboux form on Q^{2n} in the basis (p_1, q_1, ..., p_n, q_n)."""
    g = zeros((2 * n, 2 * n))
    for i in range(n):
        g[2 * i, 2 * i + 1] = Fraction(1)
        g[2 * i + 1, 2 * i] = Fraction(-1)
    return SymplecticForm(g)


def hyperbolic_gram(n):
    """Gram matrix [[0, I], [-I, 0]] on Q^{2n}."""
    g = zeros((2 * n, 2 * n))
    for i in range(n):
        g[i, n + i] = Fraction(1)
        g[n + i, i] = Fraction(-1)
    return g


def adjoint(omega, m):
    """The omega-adjoint ``m*`` with ``omega(m x, y) = omega(x, m* y)``.

    Equals ``G^{-1} m^T G`` for the Gram matrix ``G``.
    """
    g = omega.gram
    return inverse(g) @ np.asarray(m, dtype=object).T @ g


def change_basis(t, p):
    """Express a triple in the basis given by the columns of ``p``.

    The result is the triple whose i-th basis vector is ``p[:, i]``.
    """
    p = np.asarray(p, dtype=object)
    pinv = inverse(p)
    c = exact_einsum("ai,bj,abk,lk->ijl", p, p, t.algebra.product, pinv)
    g = p.T @ t.omega.gram @ p
    return FaslaTriple(Algebra(c), SymplecticForm(g), dict(t.meta))
