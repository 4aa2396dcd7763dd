"""Seeded random generators of valid construction data.

Extension data is produced by solving the linear part of the validity
conditions exactly and drawing small-integer points on the solution set,
then rejecting draws that fail full validation.  Entries are drawn from
``{-2, ..., 2}`` unless stated otherwise.
"""

import random
from fractions import Fraction

import numpy as np

from .algebra import (
    Algebra,
    FaslaTriple,
    SymplecticForm,
    adjoint,
    basis_vector,
    left_mult_matrix,
    right_mult_matrix,
)
from .cohomology import lie_1cocycle_space
from .linalg import as_rational, exact_einsum, exact_nullspace, eye, solve, zeros

__all__ = [
    "SMALL",
    "rng_from_seed",
    "small_int",
    "random_vector",
    "random_matrix",
    "random_extension_params",
    "random_double_extension",
    "random_fasla",
    "random_left_symmetric",
    "random_cotangent_data",
    "random_bimodule",
]

SMALL = (-2, -1, 0, 1, 2)


def rng_from_seed(seed=0):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def small_int(rng):
    return Fraction(rng.choice(SMALL))


def random_vector(rng, n):
    return as_rational([rng.choice(SMALL) for _ in range(n)]) if n else zeros(0)


def random_matrix(rng, n, m=None):
    m = n if m is None else m
    if n * m == 0:
        return zeros((n, m))
    return as_rational([[rng.choice(SMALL) for _ in range(m)] for _ in range(n)])


def _random_point(rng, particular, kernel):
    x = particular.copy()
    for v in kernel:
        x = x + small_int(rng) * v
    return x


def _random_combination(rng, basis, shape):
    out = zeros(shape)
    for v in basis:
        out = out + small_int(rng) * v
    return out


def _solve_D_x0(base, u, lam):
    """Affine solution set of (D + u in sp), the derivation-defect identity and
    [u, D] = u^2 + lam u - R_x0, in the unknowns (D, x0).

    Unknowns are ordered as D flattened row-major, then x0.
    """
    n = base.dim
    g = base.omega.gram
    c = base.algebra.product
    i_n = eye(n)
    # D + u in sp:  (D + u)^T G + G (D + u) = 0
    sp = exact_einsum("br,as->rsab", i_n, g) + exact_einsum("ra,bs->rsab", g, i_n)
    sp_const = u.T @ g + g @ u
    # derivation defect, rows (i, j, k)
    der = (exact_einsum("ajk,bi->ijkab", c, i_n) + exact_einsum("iak,bj->ijkab", c, i_n)
           - exact_einsum("ak,ijb->ijkab", i_n, c))
    der_const = -exact_einsum("kb,ijb->ijk", u, c) + exact_einsum("iak,aj->ijk", c, u)
    # [u, D] - u^2 - lam u + R_x0 = 0
    comm = exact_einsum("ra,bs->rsab", u, i_n) - exact_einsum("ra,bs->rsab", i_n, u)
    comm_x = exact_einsum("sjr->rsj", c)
    comm_const = -(u @ u) - lam * u
    nd = n * n
    mat = np.concatenate([
        np.concatenate([sp.reshape(nd, nd), zeros((nd, n))], axis=1),
        np.concatenate([der.reshape(n ** 3, nd), zeros((n ** 3, n))], axis=1),
        np.concatenate([comm.reshape(nd, nd), comm_x.reshape(nd, n)], axis=1),
    ])
    off = np.concatenate([sp_const.reshape(-1), der_const.reshape(-1),
                          comm_const.reshape(-1)])
    part = solve(mat, -off)
    if part is None:
        return None
    return part, exact_nullspace(mat)


def _solve_z0(base, u, D, x0, lam, mu):
    n = base.dim
    a = base.algebra
    om = base.omega
    us = adjoint(om, u)
    Ds = adjoint(om, D)
    rows, rhs = [], []
    # D*(x0 - z0) - 2 u* x0 - 2 lam (x0 - z0) + (lam - mu) z0 = 0
    rows.append(-Ds + (3 * lam - mu) * eye(n))
    rhs.append(-(Ds @ x0) + 2 * (us @ x0) + 2 * lam * x0)
    lhs = (lam - mu) * (u + us) - 2 * (u @ us)
    for i in range(n):
        e_i = basis_vector(n, i)
        m = left_mult_matrix(a, e_i) + adjoint(om, right_mult_matrix(a, e_i))
        rows.append(m)
        rhs.append(m @ x0 - lhs[:, i])
    mat = np.concatenate(rows, axis=0)
    vec = np.concatenate(rhs)
    part = solve(mat, vec)
    if part is None:
        return None
    return part, exact_nullspace(mat)


def random_extension_params(base, seed=0, tries=200, lam_mu=None, u_mode="mixed"):
    """Draw validated :class:`ExtensionParams` for ``base``.

    ``lam_mu`` fixes ``(lambda, mu)``; otherwise mu is drawn from SMALL and
    lambda is mu or mu/2.  ``u_mode`` is ``"zero"``, ``"cocycle"`` or
    ``"mixed"``.  Raises RuntimeError if no valid draw is found.
    """
    from .double_extension import ExtensionParams, validate_extension

    rng = rng_from_seed(seed)
    n = base.dim
    cocycles = lie_1cocycle_space(base) if n else []
    for _ in range(tries):
        if lam_mu is None:
            mu = small_int(rng)
            lam = mu if rng.random() < 0.5 else mu / 2
        else:
            lam, mu = (Fraction(x) for x in lam_mu)
        beta = small_int(rng)
        if n == 0:
            return ExtensionParams.zero(0, beta, lam, mu)
        use_u = u_mode == "cocycle" or (u_mode == "mixed" and rng.random() < 0.5)
        u = _random_combination(rng, cocycles, (n, n)) if use_u else zeros((n, n))
        sol = _solve_D_x0(base, u, lam)
        if sol is None:
            continue
        vec = _random_point(rng, *sol)
        D = vec[:n * n].reshape(n, n)
        x0 = vec[n * n:]
        zsol = _solve_z0(base, u, D, x0, lam, mu)
        if zsol is None:
            continue
        z0 = _random_point(rng, *zsol)
        p = ExtensionParams(u, D, x0, z0, beta, lam, mu)
        if validate_extension(base, p).passed:
            return p
    raise RuntimeError("no valid extension data found; try another seed")


def random_double_extension(base, seed=0, **kw):
    from .double_extension import double_extend

    p = random_extension_params(base, seed, **kw)
    return double_extend(base, p), p


def random_fasla(dim, seed=0):
    """A FASLA of even dimension built by iterated random double extensions."""
    if dim % 2:
        raise ValueError("FASLAs have even dimension")
    rng = rng_from_seed(seed)
    t = FaslaTriple(Algebra.zero(0), SymplecticForm(zeros((0, 0))))
    for _ in range(dim // 2):
        t, _p = random_double_extension(t, rng)
    return t


def random_left_symmetric(n, seed=0):
    """A left-symmetric algebra of dim n (a random FASLA of dim n, or a
    truncation-free construction for odd n).

    Odd-dimensional samples are drawn from a small list of known families
    twisted by a random change of basis.
    """
    from .algebra import change_basis

    rng = rng_from_seed(seed)
    if n % 2 == 0:
        return random_fasla(n, rng).algebra
    # odd n: direct sum of a random FASLA of dim n-1 with a line a.a = s a
    inner = random_fasla(n - 1, rng).algebra if n > 1 else Algebra.zero(0)
    c = zeros((n, n, n))
    c[:n - 1, :n - 1, :n - 1] = inner.product
    c[n - 1, n - 1, n - 1] = Fraction(rng.choice((0, 1)))
    a = Algebra(c)
    p = random_matrix(rng, n)
    from .linalg import exact_rank

    while exact_rank(p) < n:
        p = random_matrix(rng, n)
    dummy = FaslaTriple(a, SymplecticForm(zeros((n, n))))
    return change_basis(dummy, p).algebra


def random_cotangent_data(n, seed=0, tries=200):
    """Validated :class:`CotangentData` over a random left-symmetric base."""
    from .cotangent import random_cotangent_over

    rng = rng_from_seed(seed)
    for _ in range(tries):
        base = random_left_symmetric(n, rng)
        try:
            return random_cotangent_over(base, rng)
        except RuntimeError:
            continue
    raise RuntimeError("no valid cotangent data found")


def random_bimodule(n, m, seed=0):
    """A bimodule over a random left-symmetric algebra.

    Built from the regular or dual bimodule of a random algebra, or a direct
    sum with trivial summands, then conjugated by a random invertible matrix.
    """
    from .cohomology import Bimodule, dual_bimodule, regular_bimodule, trivial_bimodule
    from .linalg import exact_rank, inverse

    rng = rng_from_seed(seed)
    a = random_left_symmetric(n, rng)
    k = min(n, m)
    kind = rng.choice(("regular", "dual", "trivial"))
    if kind == "trivial" or k == 0:
        return trivial_bimodule(a, m)
    inner = regular_bimodule(a) if kind == "regular" else dual_bimodule(a)
    left, right = [], []
    for i in range(n):
        lm = zeros((m, m))
        rm = zeros((m, m))
        if n == k:
            lm[:n, :n] = inner.left_action[i]
            rm[:n, :n] = inner.right_action[i]
        left.append(lm)
        right.append(rm)
    if n != k:
        return trivial_bimodule(a, m)
    p = random_matrix(rng, m)
    while exact_rank(p) < m:
        p = random_matrix(rng, m)
    pinv = inverse(p)
    left = tuple(pinv @ x @ p for x in left)
    right = tuple(pinv @ x @ p for x in right)
    return Bimodule(a, left, right, m)
