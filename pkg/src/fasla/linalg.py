"""Exact linear algebra over the rationals.

Matrices are numpy arrays of ``dtype=object`` holding :class:`fractions.Fraction`
entries.  Rank and nullspace use fraction-free (Bareiss) elimination on an
integer-scaled copy of the input, so intermediate entries stay integral.
"""

from fractions import Fraction
from math import lcm

import numpy as np

__all__ = [
    "to_fraction",
    "as_rational",
    "zeros",
    "eye",
    "is_zero",
    "bareiss_echelon",
    "exact_rank",
    "exact_nullspace",
    "column_space_basis",
    "solve",
    "inverse",
    "in_column_space",
    "matrix_power",
    "is_nilpotent",
    "nilpotency_index",
    "char_poly",
    "min_poly",
    "rational_roots",
    "trace",
    "exact_einsum",
]

_INT64_SAFE = 2 ** 62


def to_fraction(x):
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: exact mode never silently rounds.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, np.bool_)):
        return Fraction(int(x))
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (float, np.floating)):
        raise TypeError(f"refusing float {x!r} in exact arithmetic")
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def as_rational(a, shape=None):
    """Return a fresh object array of Fractions built from ``a``."""
    arr = np.array(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = to_fraction(arr[idx])
    if shape is not None and out.shape != tuple(shape):
        raise ValueError(f"expected shape {tuple(shape)}, got {out.shape}")
    return out


def zeros(shape):
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def eye(n):
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero(a):
    return all(x == 0 for x in np.asarray(a, dtype=object).flat)


def trace(m):
    return sum((m[i, i] for i in range(m.shape[0])), Fraction(0))


def _scale_to_int(a):
    """``(ints, den)`` with ``a == ints / den``; ints is an object array of Python ints."""
    a = np.asarray(a, dtype=object)
    flat = [Fraction(x) for x in a.flat]
    den = lcm(1, *(x.denominator for x in flat))
    ints = np.empty(a.shape, dtype=object)
    ints.reshape(-1)[:] = [x.numerator * (den // x.denominator) for x in flat]
    return ints, den


def exact_einsum(spec, *arrays):
    """``np.einsum`` over rational arrays, computed in integer arithmetic.

    Operands are scaled to integers; when a bound on every output entry fits
    in int64 the contraction runs natively, otherwise on Python ints.
    """
    scaled = [_scale_to_int(a) for a in arrays]
    inputs, _, _out = spec.partition("->")
    sizes = {}
    for letters, a in zip(inputs.split(","), arrays):
        for ch, dim in zip(letters, np.shape(a)):
            sizes[ch] = dim
    summed = set("".join(inputs.split(","))) - set(_out)
    bound = 1
    for ch in summed:
        bound *= sizes[ch]
    for ints, _den in scaled:
        bound *= max((abs(x) for x in ints.flat), default=0)
    den = 1
    for _ints, d in scaled:
        den *= d
    if bound < _INT64_SAFE:
        ops = [ints.astype(np.int64) for ints, _d in scaled]
        res = np.einsum(spec, *ops).astype(object)
    else:
        res = np.einsum(spec, *(ints for ints, _d in scaled))
    res = np.asarray(res, dtype=object)
    out = np.empty(res.shape, dtype=object)
    out.reshape(-1)[:] = [Fraction(int(x), den) for x in res.flat]
    return out


def _integer_rows(m):
    """Scale every row of a rational matrix to integers (row space unchanged)."""
    rows = []
    for row in m:
        den = lcm(1, *(Fraction(x).denominator for x in row))
        rows.append([int(Fraction(x) * den) for x in row])
    return rows


def bareiss_echelon(m):
    """Fraction-free row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` is an integer echelon matrix (as
    lists) with the same row space as ``m`` and ``pivots`` the pivot columns.
    """
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    nrows, ncols = m.shape
    a = _integer_rows(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            lead = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c, ncols):
                # exact division is the Bareiss invariant
                row_i[j] = (piv * row_i[j] - lead * row_r[j]) // prev
            for j in range(c):
                row_i[j] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def exact_rank(m):
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(bareiss_echelon(m)[1])


def _rref(m):
    """Reduced row echelon form over Fractions, built on the Bareiss echelon."""
    rows, pivots = bareiss_echelon(m)
    red = [[Fraction(x) for x in row] for row in rows]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        p = red[r][c]
        red[r] = [x / p for x in red[r]]
        for i in range(r):
            f = red[i][c]
            if f:
                red[i] = [a - f * b for a, b in zip(red[i], red[r])]
    return red, pivots


def exact_nullspace(m):
    """Basis of ``{v : m v = 0}`` as a list of 1-d Fraction arrays.

    Each basis vector has a 1 in one free column and 0 in the other free
    columns, so the output is canonical for a given matrix.
    """
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return [eye(ncols)[i] for i in range(ncols)]
    red, pivots = _rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def column_space_basis(vectors):
    """Greedy basis: keep each vector that is independent of the ones kept."""
    kept = []
    for v in vectors:
        cand = kept + [np.asarray(v, dtype=object)]
        if exact_rank(np.array(cand, dtype=object)) == len(cand):
            kept.append(cand[-1])
    return kept


def solve(a, b):
    """One exact solution of ``a x = b`` or ``None`` if inconsistent.

    ``b`` may be a vector or a matrix (solved column by column).  Free
    variables are set to zero.
    """
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if b.ndim == 2:
        cols = [solve(a, b[:, j]) for j in range(b.shape[1])]
        if any(c is None for c in cols):
            return None
        out = zeros((a.shape[1], b.shape[1]))
        for j, c in enumerate(cols):
            out[:, j] = c
        return out
    if a.shape[0] != b.shape[0]:
        raise ValueError("row count mismatch")
    n = a.shape[1]
    if a.shape[0] == 0:
        return zeros(n)
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    red, pivots = _rref(aug)
    if n in pivots:
        return None
    x = zeros(n)
    for r, c in enumerate(pivots):
        x[c] = red[r][n]
    return x


def inverse(m):
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    inv = solve(m, eye(n))
    if inv is None or exact_rank(m) < n:
        raise ZeroDivisionError("matrix is singular")
    return inv


def in_column_space(a, b):
    return solve(a, b) is not None


def matrix_power(m, k):
    out = eye(m.shape[0])
    for _ in range(k):
        out = out @ m
    return out


def nilpotency_index(m):
    """Smallest k with m^k = 0, or None.  Checking up to n suffices."""
    n = m.shape[0]
    p = eye(n)
    for k in range(1, n + 1):
        p = p @ m
        if is_zero(p):
            return k
    return None if n else 0


def is_nilpotent(m):
    return m.shape[0] == 0 or nilpotency_index(m) is not None


def char_poly(m):
    """Coefficients of det(tI - m), highest degree first (Faddeev-LeVerrier)."""
    n = m.shape[0]
    coeffs = [Fraction(1)]
    mk = zeros((n, n))
    ident = eye(n)
    for k in range(1, n + 1):
        mk = m @ (mk + coeffs[-1] * ident)
        coeffs.append(-trace(mk) / k)
    return coeffs


def min_poly(m):
    """Monic minimal polynomial coefficients, highest degree first.

    Finds the first power of ``m`` that is a linear combination of the lower
    powers, working on flattened matrices.
    """
    n = m.shape[0]
    powers = [eye(n).reshape(-1)]
    p = eye(n)
    for k in range(1, n + 1):
        p = p @ m
        stack = np.array(powers, dtype=object).T
        sol = solve(stack, p.reshape(-1))
        if sol is not None:
            # m^k = sum c_i m^i  ->  t^k - sum c_i t^i
            return [Fraction(1)] + [-sol[i] for i in range(k - 1, -1, -1)]
        powers.append(p.reshape(-1))
    raise ArithmeticError("Cayley-Hamilton violated")  # pragma: no cover


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def rational_roots(coeffs):
    """Distinct rational roots of a polynomial (highest degree first)."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    roots = []
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(coeffs) <= 1:
        return roots
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    for p in _divisors(ints[-1]):
        for q in _divisors(ints[0]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and _poly_eval(coeffs, cand) == 0:
                    roots.append(cand)
    return sorted(roots)
