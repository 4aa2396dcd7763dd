"""Nijenhuis cohomology of left-symmetric algebras with bimodule coefficients.

A p-cochain with values in an m-dimensional bimodule is stored as an array
of shape ``(n,) * p + (m,)``; entry ``[i_1, ..., i_p, k]`` is the k-th
coordinate of ``f(e_i1, ..., e_ip)``.  Cochain bases are ordered
lexicographically by index tuple, then module index (C-order flattening).
"""

from dataclasses import dataclass
from string import ascii_lowercase

import numpy as np

from .algebra import (
    Algebra,
    basis_vector,
    left_mult_matrix,
    right_mult_matrix,
)
from .linalg import (
    as_rational,
    exact_einsum,
    exact_nullspace,
    exact_rank,
    eye,
    in_column_space,
    zeros,
)
from .verify import check_bimodule

__all__ = [
    "MAX_DEGREE",
    "Bimodule",
    "Cochain",
    "trivial_bimodule",
    "regular_bimodule",
    "dual_bimodule",
    "nijenhuis_differential",
    "differential_matrix",
    "cohomology_dims",
    "lie_1cocycle_defect",
    "lie_1cocycle_space",
    "lie_1coboundary_space",
    "lie_h1_dims",
    "cocycle_correspondence",
    "scalar_coboundary",
    "omega_up_form",
    "omega_up_is_coboundary",
    "commutator_condition",
    "theta_representative",
]

MAX_DEGREE = 3

# argument letters; y/z are reserved for module indices, w for contractions
_ARGS = ascii_lowercase[:8]


@dataclass(frozen=True, eq=False)
class Bimodule:
    """Left action ``x . v`` and right action ``v [] x`` of an algebra on Q^m."""

    base: Algebra
    left_action: tuple
    right_action: tuple
    module_dim: int

    @property
    def left_tensor(self):
        # [i, r, s] = (e_i . e_s)_r
        return _stack(self.left_action, self.base.dim, self.module_dim)

    @property
    def right_tensor(self):
        return _stack(self.right_action, self.base.dim, self.module_dim)

    def check(self):
        return check_bimodule(self.base, self.left_action, self.right_action)


def _stack(mats, n, m):
    if n == 0:
        return np.empty((0, m, m), dtype=object)
    return np.array([np.asarray(x, dtype=object) for x in mats], dtype=object).reshape(n, m, m)


def trivial_bimodule(a, m=1):
    n = a.dim
    zero = tuple(zeros((m, m)) for _ in range(n))
    return Bimodule(a, zero, zero, m)


def regular_bimodule(a):
    """``a`` acting on itself: ``x . v = xv`` and ``v [] x = vx``."""
    n = a.dim
    left = tuple(left_mult_matrix(a, basis_vector(n, i)) for i in range(n))
    right = tuple(right_mult_matrix(a, basis_vector(n, i)) for i in range(n))
    return Bimodule(a, left, right, n)


def dual_bimodule(a, circ=None):
    """The dual space with ``a . beta = L*_a(beta)`` and ``beta [] b = beta o L'_b``.

    ``circ`` is the structure tensor of the auxiliary product ``o`` (zero if
    omitted).  Matrices act on coordinates in the dual basis.
    """
    n = a.dim
    circ = zeros((n, n, n)) if circ is None else as_rational(circ)
    left = tuple(-left_mult_matrix(a, basis_vector(n, i)).T for i in range(n))
    # L'_b[k, j] = (b o e_j)_k, and beta [] b has coordinates L'_b^T beta
    right = tuple(circ[i].copy() for i in range(n))
    return Bimodule(a, left, right, n)


@dataclass(frozen=True, eq=False)
class Cochain:
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = as_rational(self.coeffs)
        if c.ndim != self.degree + 1:
            raise ValueError(f"degree-{self.degree} cochain needs {self.degree + 1} axes")
        object.__setattr__(self, "coeffs", c)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.coeffs.shape == other.coeffs.shape
                and bool(np.all(self.coeffs == other.coeffs)))

    __hash__ = None

    @property
    def is_zero(self):
        return all(x == 0 for x in self.coeffs.flat)

    def to_doc(self):
        from .serialize import encode_array

        return {"degree": self.degree, "shape": list(self.coeffs.shape),
                "coeffs": encode_array(self.coeffs)}

    @classmethod
    def from_doc(cls, doc):
        from .serialize import FormatError, decode_array

        try:
            p = doc["degree"]
            shape = tuple(doc["shape"])
        except (KeyError, TypeError):
            raise FormatError("cochain needs 'degree' and 'shape'") from None
        return cls(p, decode_array(doc["coeffs"], p + 1, shape))


def _delta_tensor(b, f, batch=False):
    """Apply the Nijenhuis differential to a coefficient tensor.

    With ``batch=True`` the leading axis of ``f`` indexes independent cochains.
    """
    n, m = b.base.dim, b.module_dim
    p = f.ndim - 1 - int(batch)
    if p + 1 > len(_ARGS):
        raise ValueError("degree too large")
    q = "q" if batch else ""
    lead = (f.shape[0],) if batch else ()
    out = zeros(lead + (n,) * (p + 1) + (m,))
    if n == 0 or p == 0:
        return out
    xs = list(_ARGS[:p + 1])
    full = q + "".join(xs)
    lt, rt = b.left_tensor, b.right_tensor
    c = b.base.product
    br = c - c.transpose(1, 0, 2)

    def without(*drop):
        return [x for k, x in enumerate(xs) if k not in drop]

    for i in range(p):
        s = (-1) ** i
        rest = "".join(without(i))
        out = out + s * exact_einsum(f"{xs[i]}yz,{q}{rest}z->{full}y", lt, f)
        head = "".join(without(i, p))
        out = out + s * exact_einsum(f"{q}{head}{xs[i]}z,{xs[p]}yz->{full}y", f, rt)
        out = out - s * exact_einsum(f"{xs[i]}{xs[p]}w,{q}{head}wz->{full}z", c, f)
    for i in range(p):
        for j in range(i + 1, p):
            s = (-1) ** (i + j + 1)
            rest = "".join(without(i, j))
            out = out - s * exact_einsum(f"{xs[i]}{xs[j]}w,{q}w{rest}z->{full}z", br, f)
    return out


def nijenhuis_differential(b, f):
    """``delta_p f`` for a :class:`Cochain` of degree p."""
    coeffs = f.coeffs
    n, m = b.base.dim, b.module_dim
    if coeffs.shape != (n,) * f.degree + (m,):
        raise ValueError(f"cochain shape {coeffs.shape} does not match the bimodule")
    if f.degree > MAX_DEGREE:
        raise ValueError(f"differentials are implemented up to degree {MAX_DEGREE}")
    return Cochain(f.degree + 1, _delta_tensor(b, coeffs))


def differential_matrix(b, p):
    """Matrix of ``delta_p`` in the lexicographic cochain bases."""
    if p > MAX_DEGREE:
        raise ValueError(f"differentials are implemented up to degree {MAX_DEGREE}")
    n, m = b.base.dim, b.module_dim
    dom = n ** p * m
    basis = eye(dom).reshape((dom,) + (n,) * p + (m,))
    images = _delta_tensor(b, basis, batch=True)
    return images.reshape(dom, -1).T


def cohomology_dims(b, p):
    """``(dim Z^p, dim B^p, dim H^p)`` with ``B^0 = {0}``."""
    n, m = b.base.dim, b.module_dim
    dim_c = n ** p * m
    z = dim_c - exact_rank(differential_matrix(b, p))
    bdim = 0 if p == 0 else exact_rank(differential_matrix(b, p - 1))
    return z, bdim, z - bdim


# -- the Lie side ------------------------------------------------------------

def lie_1cocycle_defect(t, u):
    """``u([x,y]) - L_x u(y) + L_y u(x)`` on basis pairs, shape (n, n, n)."""
    a = t.algebra if hasattr(t, "algebra") else t
    n = a.dim
    u = np.asarray(u, dtype=object)
    if n == 0:
        return zeros((0, 0, 0))
    c = a.product
    br = c - c.transpose(1, 0, 2)
    # L_x u(y): sum_s c[i, s, k] u[s, j]
    lu = exact_einsum("isk,sj->ijk", c, u)
    return exact_einsum("ijw,kw->ijk", br, u) - lu + lu.transpose(1, 0, 2)


def lie_1cocycle_space(t):
    """Basis of ``Z^1_L``: matrices u with u([x,y]) = L_x u(y) - L_y u(x)."""
    n = t.dim
    if n == 0:
        return []
    a = t.algebra if hasattr(t, "algebra") else t
    c = a.product
    br = c - c.transpose(1, 0, 2)
    i_n = eye(n)
    # coefficient of u[a, b] in the defect at (i, j, k)
    mat = (exact_einsum("ijb,ka->ijkab", br, i_n) - exact_einsum("iak,bj->ijkab", c, i_n)
           + exact_einsum("jak,bi->ijkab", c, i_n))
    return [v.reshape(n, n) for v in exact_nullspace(mat.reshape(n ** 3, n * n))]


def lie_1coboundary_space(t):
    """Spanning set of ``B^1_L``: the maps ``x -> L_x(z)``."""
    n = t.dim
    return [right_mult_matrix(t.algebra, basis_vector(n, i)) for i in range(n)]


def lie_h1_dims(t):
    """``(dim Z^1_L, dim B^1_L, dim H^1_L)`` for the representation L on g."""
    z = len(lie_1cocycle_space(t))
    spans = lie_1coboundary_space(t)
    b = exact_rank(np.array([m.reshape(-1) for m in spans], dtype=object)) if spans else 0
    return z, b, z - b


def cocycle_correspondence(t, u):
    """The scalar 2-cochain ``f(x, y) = omega(u(x), y)``."""
    u = np.asarray(u, dtype=object)
    f = u.T @ t.omega.gram
    return Cochain(2, f.reshape(t.dim, t.dim, 1))


def scalar_coboundary(t, phi):
    """``delta_1 phi`` for a linear form ``phi`` (trivial coefficients)."""
    b = trivial_bimodule(t.algebra if hasattr(t, "algebra") else t)
    phi = as_rational(phi)
    return nijenhuis_differential(b, Cochain(1, phi.reshape(-1, 1)))


def omega_up_form(t, u, D, lam):
    """Gram matrix of ``omega'((uD - Du - u^2 - lam u) x, y)``."""
    u = np.asarray(u, dtype=object)
    D = np.asarray(D, dtype=object)
    m = u @ D - D @ u - u @ u - lam * u
    return m.T @ t.omega.gram


def omega_up_is_coboundary(t, u, D, lam, x0=None):
    """Whether ``omega_{u,p}`` lies in ``B^2`` with trivial coefficients.

    Membership is decided against the column space of ``delta_1``; ``x0`` is
    accepted for interface symmetry and ignored (see
    :func:`commutator_condition` for the x0-specific form).
    """
    n = t.dim
    if n == 0:
        return True
    form = omega_up_form(t, u, D, lam).reshape(-1)
    d1 = differential_matrix(trivial_bimodule(t.algebra), 1)
    return in_column_space(d1, form)


def commutator_condition(t, u, D, lam, x0):
    """``[u, D] = u^2 + lam u - R_{x0}``, the matrix form of the coboundary condition."""
    u = np.asarray(u, dtype=object)
    D = np.asarray(D, dtype=object)
    rx0 = right_mult_matrix(t.algebra, as_rational(x0))
    return all(x == 0 for x in (u @ D - D @ u - u @ u - lam * u + rx0).flat)


def theta_representative(t, u):
    """Gram matrix of ``(x, y) -> omega(u(x), y) - omega(u(y), x)``."""
    u = np.asarray(u, dtype=object)
    f = u.T @ t.omega.gram
    return f - f.T
