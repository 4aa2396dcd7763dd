"""Double extensions of FASLAs and the inverse reduction by a 1-dim ideal.

The extension of a 2n-dimensional triple ``B`` lives on ``Ke + B + Kd``
with basis order ``(e, b_1, ..., b_2n, d)``, ``omega(e, d) = 1`` and the
plane ``span{e, d}`` orthogonal to ``B``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import (
    Algebra,
    FaslaTriple,
    SymplecticForm,
    adjoint,
    basis_vector,
    change_basis,
    left_mult_matrix,
    omega_perp,
    right_mult_matrix,
)
from .cohomology import lie_1cocycle_defect, omega_up_is_coboundary
from .linalg import (
    as_rational,
    char_poly,
    column_space_basis,
    exact_nullspace,
    exact_rank,
    inverse,
    is_zero,
    rational_roots,
    solve,
    zeros,
)
from .verify import Check, VerificationReport

__all__ = [
    "ExtensionParams",
    "ReductionResult",
    "ExtensionError",
    "ReductionError",
    "DecompositionFailure",
    "validate_extension",
    "double_extend",
    "find_degenerate_ideal_vectors",
    "find_one_dim_ideals",
    "check_bilateral_ideal",
    "reduce_by_ideal",
    "decompose_to_zero",
]


class ExtensionError(ValueError):
    """Raised when extension data fails validation."""

    def __init__(self, report):
        names = ", ".join(c.name for c in report.failures)
        super().__init__(f"extension data rejected: {names}")
        self.report = report


class ReductionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ExtensionParams:
    """Data ``(u, D, x0, z0, beta, lambda, mu)`` of a double extension."""

    u: np.ndarray
    D: np.ndarray
    x0: np.ndarray
    z0: np.ndarray
    beta: Fraction = Fraction(0)
    lam: Fraction = Fraction(0)
    mu: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("u", "D", "x0", "z0"):
            arr = as_rational(getattr(self, name))
            if arr.size == 0:
                arr = np.empty((0, 0) if name in ("u", "D") else (0,), dtype=object)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        for name in ("beta", "lam", "mu"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        n = self.x0.shape[0]
        if self.u.shape != (n, n) or self.D.shape != (n, n) or self.z0.shape != (n,):
            raise ValueError("u, D must be n x n and x0, z0 length n")

    @property
    def dim(self):
        return self.x0.shape[0]

    @classmethod
    def zero(cls, n, beta=0, lam=0, mu=0):
        return cls(zeros((n, n)), zeros((n, n)), zeros(n), zeros(n), beta, lam, mu)

    def __eq__(self, other):
        if not isinstance(other, ExtensionParams):
            return NotImplemented
        return (self.u.shape == other.u.shape
                and all(bool(np.all(getattr(self, k) == getattr(other, k)))
                        for k in ("u", "D", "x0", "z0"))
                and (self.beta, self.lam, self.mu) == (other.beta, other.lam, other.mu))

    __hash__ = None

    def replace(self, **kw):
        fields = dict(u=self.u, D=self.D, x0=self.x0, z0=self.z0,
                      beta=self.beta, lam=self.lam, mu=self.mu)
        fields.update(kw)
        return ExtensionParams(**fields)


@dataclass(frozen=True)
class ReductionResult:
    base: FaslaTriple
    params: ExtensionParams
    basis_change: np.ndarray
    e: np.ndarray = field(default=None, compare=False)
    d: np.ndarray = field(default=None, compare=False)


def _vec_check(name, vec):
    if is_zero(vec):
        return Check(name, True)
    nz = next(i for i, x in enumerate(vec.flat) if x != 0)
    idx = np.unravel_index(nz, vec.shape)
    return Check(name, False, tuple(int(i) for i in idx), vec.flat[nz])


def validate_extension(base, p):
    """One report line per condition on ``(u, D, x0, z0, beta, lambda, mu)``.

    Adjoints are taken with respect to the base form ``omega'``.
    """
    n = base.dim
    if p.dim != n:
        raise ValueError(f"parameters are for dim {p.dim}, base has dim {n}")
    a = base.algebra
    g = base.omega.gram
    u, D, x0, z0, lam, mu = p.u, p.D, p.x0, p.z0, p.lam, p.mu
    report = VerificationReport()

    ok = lam == mu or 2 * lam == mu
    report.add(Check("lambda_mu_relation", ok, None if ok else (), None if ok else lam - mu))

    report.add(_vec_check("u_lie_1cocycle", lie_1cocycle_defect(base, u)))

    Du = D + u
    report.add(_vec_check("D_plus_u_symplectic", Du.T @ g + g @ Du))

    if n == 0:
        for name in ("commutator_u_D", "x0_z0_linear", "D_derivation_defect",
                     "u_adjoint_relation", "omega_up_coboundary"):
            report.add(Check(name, True))
        return report

    L = [left_mult_matrix(a, basis_vector(n, i)) for i in range(n)]
    R = [right_mult_matrix(a, basis_vector(n, i)) for i in range(n)]
    Rx0 = right_mult_matrix(a, x0)
    report.add(_vec_check("commutator_u_D", u @ D - D @ u - (u @ u + lam * u - Rx0)))

    us = adjoint(base.omega, u)
    Ds = adjoint(base.omega, D)
    w = x0 - z0
    report.add(_vec_check("x0_z0_linear",
                          Ds @ w - 2 * (us @ x0) - 2 * lam * w + (lam - mu) * z0))

    c = a.product
    # D(x)y + xD(y) - D(xy) - u(xy) + x u(y) on basis pairs
    defect = zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            xy = c[i, j]
            defect[i, j] = (R[j] @ D[:, i] + L[i] @ D[:, j] - D @ xy
                            - u @ xy + L[i] @ u[:, j])
    report.add(_vec_check("D_derivation_defect", defect))

    lhs = (lam - mu) * (u + us) - 2 * (u @ us)
    rhs = zeros((n, n))
    for i in range(n):
        rhs[:, i] = (L[i] + adjoint(base.omega, R[i])) @ w
    report.add(_vec_check("u_adjoint_relation", lhs - rhs))

    report.add(Check("omega_up_coboundary", omega_up_is_coboundary(base, u, D, lam, x0)))
    return report


def _extension_product(base, p):
    n = base.dim
    N = n + 2
    E, DD = 0, N - 1
    g = base.omega.gram
    cb = base.algebra.product
    u, D, x0, z0 = p.u, p.D, p.x0, p.z0
    c = zeros((N, N, N))
    B = slice(1, n + 1)
    if n:
        # x.y = omega'(u x, y) e + xy
        c[B, B, E] = u.T @ g
        c[B, B, B] = cb
        # d.x = omega'(x0, x) e + (D + u) x
        c[DD, B, E] = x0 @ g
        c[DD, B, B] = (D + u).T
        # x.d = omega'(x0 - z0, x) e + u x
        c[B, DD, E] = (x0 - z0) @ g
        c[B, DD, B] = u.T
        c[DD, DD, B] = x0
    c[DD, E, E] = p.lam
    c[E, DD, E] = p.lam - p.mu
    c[DD, DD, E] = p.beta
    c[DD, DD, DD] = -p.lam
    gram = zeros((N, N))
    gram[E, DD] = Fraction(1)
    gram[DD, E] = Fraction(-1)
    gram[B, B] = g
    return c, gram


def double_extend(base, p, validate=True):
    """The (2n+2)-dimensional double extension of ``base`` by ``p``."""
    if validate:
        report = validate_extension(base, p)
        if not report.passed:
            raise ExtensionError(report)
    c, gram = _extension_product(base, p)
    labels = None
    if base.algebra.labels is not None:
        labels = ("e",) + base.algebra.labels + ("d",)
    elif base.dim == 0:
        labels = ("e", "d")
    return FaslaTriple(Algebra(c, labels), SymplecticForm(gram))


# -- inverse direction -------------------------------------------------------

def _annihilator_rows(a):
    """Rows of the linear system L_v = 0, R_v = 0 in the unknown v."""
    n = a.dim
    c = a.product
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append(c[:, j, k])  # (v . e_j)_k
            rows.append(c[j, :, k])  # (e_j . v)_k
    return np.array(rows, dtype=object).reshape(-1, n)


def find_degenerate_ideal_vectors(t):
    """Basis of the two-sided annihilator ``{v : L_v = 0 and R_v = 0}``."""
    a = t.algebra if isinstance(t, FaslaTriple) else t
    if a.dim == 0:
        return []
    return exact_nullspace(_annihilator_rows(a))


def _common_eigenspaces(space, mats):
    """Subspaces of ``span(space)`` on which every matrix acts by a scalar.

    For ``v = S c`` with ``S`` of full column rank, ``M v = t v`` forces ``t`` to
    be an eigenvalue of ``S^+ M S`` for any left inverse ``S^+``.
    """
    if not space:
        return []
    if not mats:
        return [space]
    m, rest = mats[0], mats[1:]
    basis = np.array(space, dtype=object).T
    images = m @ basis
    left_inv = inverse(basis.T @ basis) @ basis.T
    out = []
    for lam in rational_roots(char_poly(left_inv @ images)):
        kern = exact_nullspace(images - lam * basis)
        out.extend(_common_eigenspaces([basis @ v for v in kern], rest))
    return out


def find_one_dim_ideals(t):
    """Vectors spanning 1-dim two-sided ideals, annihilator vectors first.

    Common eigenvectors of all ``L_x`` and ``R_x`` are found exactly via the
    rational eigenvalues of each multiplication operator.  Eigenvalues that
    are irrational are not searched, so this may miss ideals.
    """
    a = t.algebra if isinstance(t, FaslaTriple) else t
    n = a.dim
    found = list(find_degenerate_ideal_vectors(a))
    mats = []
    for i in range(n):
        ei = basis_vector(n, i)
        mats.append(left_mult_matrix(a, ei))
        mats.append(right_mult_matrix(a, ei))
    full = [basis_vector(n, i) for i in range(n)]
    for sub in _common_eigenspaces(full, mats):
        for v in sub:
            if exact_rank(np.array(found + [v], dtype=object)) > len(found):
                found.append(v)
    return found


def _spans_line(v, images):
    """Whether every image vector lies in span{v}."""
    m = np.array([v] + list(images), dtype=object)
    return exact_rank(m) <= 1


def check_bilateral_ideal(t, e):
    """``(I bilateral, I^perp bilateral)`` for ``I = span{e}``."""
    e = np.asarray(e, dtype=object)
    if is_zero(e):
        raise ValueError("e must be nonzero")
    a = t.algebra
    n = a.dim
    basis = [basis_vector(n, i) for i in range(n)]
    left = [a.mul(x, e) for x in basis]
    right = [a.mul(e, x) for x in basis]
    i_ok = _spans_line(e, left + right)
    perp = omega_perp(t.omega, [e])
    perp_ok = True
    if perp:
        pm = np.array(perp, dtype=object).T
        for y in perp:
            for x in basis:
                for z in (a.mul(x, y), a.mul(y, x)):
                    if solve(pm, z) is None:
                        perp_ok = False
                        break
                if not perp_ok:
                    break
            if not perp_ok:
                break
    return i_ok, perp_ok


def _complement_basis(t, e, d):
    """Basis of span{e, d}^perp, canonical when e, d are coordinate vectors."""
    n = t.dim
    om = t.omega
    projected = []
    for i in range(n):
        v = basis_vector(n, i)
        projected.append(v - om(v, d) * e + om(v, e) * d)
    return column_space_basis([v for v in projected if not is_zero(v)])


def reduce_by_ideal(t, e, d):
    """Split ``t`` along ``I = span{e}`` and read off base and parameters."""
    e = as_rational(e)
    d = as_rational(d)
    n = t.dim
    if t.omega(e, d) != 1:
        raise ReductionError("omega(e, d) must equal 1")
    i_ok, perp_ok = check_bilateral_ideal(t, e)
    if not (i_ok and perp_ok):
        raise ReductionError(
            f"span(e) is {'not ' if not i_ok else ''}a bilateral ideal and its "
            f"orthogonal is {'not ' if not perp_ok else ''}bilateral")
    comp = _complement_basis(t, e, d)
    m = n - 2
    if len(comp) != m:
        raise ReductionError("complement of span{e, d} has the wrong dimension")
    P = zeros((n, n))
    P[:, 0] = e
    for i, v in enumerate(comp):
        P[:, 1 + i] = v
    P[:, n - 1] = d
    s = change_basis(t, P)
    c = s.algebra.product
    gram = s.omega.gram
    B = slice(1, m + 1)
    E, DD = 0, n - 1
    gB = gram[B, B]
    base_labels = None
    if t.algebra.labels is not None and m and all(
            sum(1 for x in v if x != 0) == 1 for v in comp):
        base_labels = tuple(t.algebra.labels[int(np.nonzero(v)[0][0])] for v in comp)
    base = FaslaTriple(Algebra(c[B, B, B] if m else zeros((0, 0, 0)), base_labels),
                       SymplecticForm(gB if m else zeros((0, 0))))
    lam = c[DD, E, E]
    mu = lam - c[E, DD, E]
    beta = c[DD, DD, E]
    if m:
        ginv_t = inverse(gB).T
        u = c[B, DD, B].T
        x0 = c[DD, DD, B].copy()
        D = c[DD, B, B].T - u
        # e-coefficient of x.d is omega'(x0 - z0, x) = ((x0 - z0)^T gB)_x
        w = ginv_t @ c[B, DD, E]
        z0 = x0 - w
    else:
        u = D = zeros((0, 0))
        x0 = z0 = zeros(0)
    params = ExtensionParams(u, D, x0, z0, beta, lam, mu)
    rebuilt = FaslaTriple(Algebra(_extension_product(base, params)[0]),
                          SymplecticForm(_extension_product(base, params)[1]))
    if not (rebuilt.algebra == s.algebra and rebuilt.omega == s.omega):
        raise ReductionError("product is not of double-extension form in this splitting")
    return ReductionResult(base, params, P, e, d)


@dataclass
class DecompositionFailure:
    """Greedy decomposition got stuck; ``stuck`` is the triple it could not reduce."""

    steps: list
    stuck: FaslaTriple
    reason: str

    def __bool__(self):
        return False


def _dual_partner(t, e):
    n = t.dim
    for j in range(n):
        v = basis_vector(n, j)
        w = t.omega(e, v)
        if w != 0:
            return v / w
    return None


def decompose_to_zero(t):
    """Reduce repeatedly by 1-dim bilateral ideals until dimension 0.

    Candidates are tried in order: annihilator basis vectors, then other
    common eigenvectors of the multiplication operators.  The search is a
    heuristic outside the associative case; failure is not a proof that no
    decomposition exists.
    """
    steps = []
    cur = t
    while cur.dim > 0:
        chosen = None
        for e in find_one_dim_ideals(cur):
            i_ok, perp_ok = check_bilateral_ideal(cur, e)
            if not (i_ok and perp_ok):
                continue
            d = _dual_partner(cur, e)
            if d is None:
                continue
            try:
                chosen = reduce_by_ideal(cur, e, d)
            except ReductionError:
                continue
            break
        if chosen is None:
            return DecompositionFailure(
                steps, cur, "no admissible 1-dim bilateral ideal among searched candidates "
                            "(heuristic search; not a proof of nonexistence)")
        steps.append(chosen)
        cur = chosen.base
    return steps
