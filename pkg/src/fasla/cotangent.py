"""Twisted cotangent FASLAs on B* + B and detection of Lagrangian ideals.

A :class:`CotangentData` holds a left-symmetric algebra ``B``, a commutative
product ``o`` on ``B`` (tensor ``circ``) and a B*-valued 2-cochain ``f`` with
``f[i, j, k] = f(e_i, e_j)(e_k)``.  The built algebra uses the basis
``(e*_1, ..., e*_n, e_1, ..., e_n)`` and the form ``alpha(b) - beta(a)``.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, FaslaTriple, SymplecticForm, hyperbolic_gram, right_mult_matrix
from .cohomology import Cochain, differential_matrix, dual_bimodule, nijenhuis_differential
from .linalg import as_rational, exact_einsum, exact_nullspace, exact_rank, eye, inverse, is_zero, zeros
from .verify import Check, VerificationReport, check_left_symmetric, _scan

__all__ = [
    "CotangentData",
    "CotangentError",
    "LagrangianDetection",
    "LagrangianNotFound",
    "validate_cotangent",
    "twisted_cotangent",
    "hess_product",
    "hess_data",
    "cotangent_right_mults",
    "detect_lagrangian_ideal",
    "importan1_defect",
    "f_cocycle_space",
    "random_cotangent_over",
]


class CotangentError(ValueError):
    def __init__(self, report):
        names = ", ".join(c.name for c in report.failures)
        super().__init__(f"cotangent data rejected: {names}")
        self.report = report


@dataclass(frozen=True, eq=False)
class CotangentData:
    base: Algebra
    circ: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        n = self.base.dim
        for name in ("circ", "f"):
            arr = as_rational(getattr(self, name)) if n else zeros((0, 0, 0))
            if arr.shape != (n, n, n):
                raise ValueError(f"{name} must have shape {(n, n, n)}, got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def dim(self):
        return self.base.dim

    def __eq__(self, other):
        if not isinstance(other, CotangentData):
            return NotImplemented
        return (self.base == other.base and bool(np.all(self.circ == other.circ))
                and bool(np.all(self.f == other.f)))

    __hash__ = None


def importan1_defect(c, circ):
    """``a o (b o c) + a(b o c) - (ab) o c - b o (ac)`` on basis triples (a, b, c)."""
    lhs = exact_einsum("bcm,aml->abcl", circ, circ) + exact_einsum("bcm,aml->abcl", circ, c)
    rhs = exact_einsum("abm,mcl->abcl", c, circ) + exact_einsum("acm,bml->abcl", c, circ)
    return lhs - rhs


def _triples(n):
    return itertools.product(range(n), repeat=3)


def validate_cotangent(d):
    n = d.dim
    c, circ, f = d.base.product, d.circ, d.f
    report = VerificationReport()
    base = check_left_symmetric(d.base).checks[0]
    report.add(Check("base_left_symmetric", base.passed, base.witness, base.discrepancy))
    report.add(_scan("circ_commutative",
                     ((i, j) for i in range(n) for j in range(i + 1, n)),
                     lambda i, j: circ[i, j] - circ[j, i]))
    imp = importan1_defect(c, circ)
    report.add(_scan("importan1", _triples(n), lambda i, j, k: imp[i, j, k]))
    bim = dual_bimodule(d.base, circ)
    report.extend(bim.check())
    df = nijenhuis_differential(bim, Cochain(2, f)).coeffs
    report.add(_scan("f_2cocycle", _triples(n), lambda i, j, k: df[i, j, k]))
    report.add(_scan("important4", _triples(n), lambda i, j, k: f[i, j, k] - f[i, k, j]))
    return report


def _cotangent_tensor(d):
    n = d.dim
    c, circ, f = d.base.product, d.circ, d.f
    out = zeros((2 * n, 2 * n, 2 * n))
    dual, prim = slice(0, n), slice(n, 2 * n)
    # alpha . b = tL'_b(alpha): (e*_i . e_j)_r = circ[j, r, i]
    out[dual, prim, dual] = circ.transpose(2, 0, 1)
    # a . beta = L*_a(beta): (e_i . e*_j)_r = -c[i, r, j]
    out[prim, dual, dual] = -c.transpose(0, 2, 1)
    out[prim, prim, dual] = f
    out[prim, prim, prim] = c
    return out


def twisted_cotangent(d, validate=True):
    if validate:
        report = validate_cotangent(d)
        if not report.passed:
            raise CotangentError(report)
    n = d.dim
    labels = None
    if d.base.labels is not None:
        labels = tuple(f"{x}*" for x in d.base.labels) + d.base.labels
    return FaslaTriple(Algebra(_cotangent_tensor(d), labels), SymplecticForm(hyperbolic_gram(n)),
                       {"construction": "twisted-cotangent"})


def hess_data(base):
    n = base.dim
    return CotangentData(base, zeros((n, n, n)), zeros((n, n, n)))


def hess_product(base):
    """Classical cotangent (Hess) FASLA: ``o = 0`` and ``f = 0``.

    Checks that B.B lies in B, B.B* in B*, and B*.g = 0.
    """
    rep = check_left_symmetric(base)
    if not rep.passed:
        raise CotangentError(rep)
    n = base.dim
    t = twisted_cotangent(hess_data(base))
    c = t.algebra.product
    dual, prim = slice(0, n), slice(n, 2 * n)
    blocks = (c[prim, prim, dual], c[prim, dual, prim], c[dual])
    if not all(is_zero(b) for b in blocks):  # pragma: no cover
        raise AssertionError("Hess product does not preserve the Lagrangian blocks")
    meta = dict(t.meta, construction="hess")
    return FaslaTriple(t.algebra, t.omega, meta)


def cotangent_right_mults(d):
    """Right multiplications of the twisted cotangent, built blockwise.

    Uses ``R_a(b) = f(b, a) + ba``, ``R_a(beta) = tL'_a(beta)``,
    ``R_beta(a) = L*_a(beta)`` and ``R_alpha(beta) = 0``, and compares with
    the right multiplications of the assembled structure tensor.
    """
    n = d.dim
    c, circ, f = d.base.product, d.circ, d.f
    mats = []
    for k in range(n):
        # R_{e*_k}: e*_j -> 0, e_i -> L*_{e_i}(e*_k)
        m = zeros((2 * n, 2 * n))
        m[:n, n:] = -c[:, :, k].T
        mats.append(m)
    for k in range(n):
        # R_{e_k}: e*_j -> tL'_{e_k}(e*_j), e_i -> f(e_i, e_k) + e_i e_k
        m = zeros((2 * n, 2 * n))
        m[:n, :n] = circ[k]
        m[:n, n:] = f[:, k, :].T
        m[n:, n:] = c[:, k, :].T
        mats.append(m)
    alg = Algebra(_cotangent_tensor(d))
    for i, m in enumerate(mats):
        direct = right_mult_matrix(alg, eye(2 * n)[i])
        if not np.all(direct == m):  # pragma: no cover
            raise AssertionError(f"right multiplication block formula disagrees at basis {i}")
    return mats


# -- detection ---------------------------------------------------------------

class LagrangianNotFound(Exception):
    """No Lagrangian bilateral ideal among the searched candidates.

    This is not a proof that none exists.
    """


@dataclass(frozen=True)
class LagrangianDetection:
    ideal_basis: tuple
    data: CotangentData
    basis_change: np.ndarray
    source: str


def _span_contains(basis_mat, vecs):
    r = exact_rank(basis_mat)
    return all(exact_rank(np.concatenate([basis_mat, np.asarray(v, dtype=object).reshape(-1, 1)],
                                         axis=1)) == r for v in vecs)


def _is_isotropic(omega, vecs):
    g = omega.gram
    return all(u @ g @ v == 0 for u in vecs for v in vecs)


def _is_bilateral(a, vecs):
    n = a.dim
    mat = np.array(vecs, dtype=object).T
    images = []
    for v in vecs:
        lv = exact_einsum("i,ijk->kj", v, a.product)
        rv = exact_einsum("j,ijk->ki", v, a.product)
        images.extend(lv[:, j] for j in range(n))
        images.extend(rv[:, j] for j in range(n))
    return _span_contains(mat, images)


def _ideal_closure(a, vecs):
    """Smallest two-sided ideal containing ``vecs``, as a basis list."""
    n = a.dim
    basis = []

    def add(v):
        if is_zero(v):
            return False
        cand = basis + [v]
        if exact_rank(np.array(cand, dtype=object)) > len(basis):
            basis.append(v)
            return True
        return False

    queue = list(vecs)
    while queue:
        v = queue.pop(0)
        if add(v):
            lv = exact_einsum("i,ijk->kj", v, a.product)
            rv = exact_einsum("j,ijk->ki", v, a.product)
            queue.extend(lv[:, j] for j in range(n))
            queue.extend(rv[:, j] for j in range(n))
    return basis


def _candidates(t):
    """Lagrangian subspaces to test, in search order."""
    from .double_extension import find_degenerate_ideal_vectors

    a = t.algebra
    dim = t.dim
    n = dim // 2
    coord = [eye(dim)[i] for i in range(dim)]
    yield "leading-block", coord[:n]
    ann = find_degenerate_ideal_vectors(t)
    if len(ann) == n and _is_isotropic(t.omega, ann):
        yield "annihilator", ann
    if ann:
        acc = []
        for v in ann:
            cl = _ideal_closure(a, acc + [v])
            if len(cl) <= n and _is_isotropic(t.omega, cl):
                acc = cl
        if len(acc) == n:
            yield "annihilator-closure", acc
    for sub in itertools.combinations(range(dim), n):
        if sub == tuple(range(n)):
            continue
        yield "coordinate-subset", [coord[i] for i in sub]


def _readout(t, ideal):
    """Adapted basis and cotangent data for a Lagrangian bilateral ideal."""
    dim = t.dim
    n = dim // 2
    g = t.omega.gram
    # complete with coordinate vectors, lexicographically
    comp = []
    span = [np.asarray(v, dtype=object) for v in ideal]
    for i in range(dim):
        v = eye(dim)[i]
        if exact_rank(np.array(span + [v], dtype=object)) > len(span):
            span.append(v)
            comp.append(v)
    pair = np.array([[u @ g @ w for w in comp] for u in ideal], dtype=object)
    x = inverse(pair)
    dual = [sum((x[k, m] * ideal[m] for m in range(n)), zeros(dim)) for k in range(n)]
    a = [[-(comp[j] @ g @ comp[l]) / 2 for l in range(n)] for j in range(n)]
    comp = [comp[j] + sum((a[j][l] * dual[l] for l in range(n)), zeros(dim)) for j in range(n)]
    p = np.array(dual + comp, dtype=object).T
    from .algebra import change_basis

    s = change_basis(t, p)
    c = s.algebra.product
    dl, pr = slice(0, n), slice(n, dim)
    base = Algebra(c[pr, pr, pr])
    circ = c[dl, pr, dl].transpose(1, 2, 0)
    f = c[pr, pr, dl]
    data = CotangentData(base, circ, f)
    return data, p, s


def detect_lagrangian_ideal(t):
    """Find a Lagrangian bilateral ideal and read off cotangent data.

    Candidates are searched in a fixed order (see the module notes in the
    README); the search is incomplete, so failure raises
    :class:`LagrangianNotFound` rather than asserting nonexistence.
    """
    dim = t.dim
    if dim % 2:
        raise LagrangianNotFound("odd dimension")
    if dim == 0:
        return LagrangianDetection((), hess_data(Algebra.zero(0)), zeros((0, 0)), "empty")
    a = t.algebra
    for source, cand in _candidates(t):
        if exact_rank(np.array(cand, dtype=object)) != dim // 2:
            continue
        if not _is_isotropic(t.omega, cand) or not _is_bilateral(a, cand):
            continue
        data, p, s = _readout(t, cand)
        if not validate_cotangent(data).passed:
            continue
        rebuilt = twisted_cotangent(data, validate=False)
        if rebuilt.algebra == s.algebra and rebuilt.omega == s.omega:
            ideal = tuple(p[:, i] for i in range(dim // 2))
            return LagrangianDetection(ideal, data, p, source)
    raise LagrangianNotFound("no Lagrangian bilateral ideal among the searched candidates "
                             "(incomplete search; not a proof of nonexistence)")


# -- sampling ------------------------------------------------------------------

def f_cocycle_space(base, circ):
    """Basis of 2-cochains f with delta f = 0 in the dual bimodule and
    f(a, b)(c) = f(a, c)(b)."""
    n = base.dim
    if n == 0:
        return []
    d2 = differential_matrix(dual_bimodule(base, circ), 2)
    sym = []
    for i, j, k in _triples(n):
        if j < k:
            row = zeros((n, n, n))
            row[i, j, k] = 1
            row[i, k, j] = -1
            sym.append(row.reshape(-1))
    mat = np.concatenate([d2, np.array(sym, dtype=object).reshape(-1, n ** 3)], axis=0)
    return [v.reshape(n, n, n) for v in exact_nullspace(mat)]


def _circ_candidate(rng, n):
    from fractions import Fraction

    circ = zeros((n, n, n))
    for _ in range(rng.choice((1, 1, 2))):
        i, j, k = (rng.randrange(n) for _ in range(3))
        v = Fraction(rng.choice((-2, -1, 1, 2)))
        circ[i, j, k] += v
        if i != j:
            circ[j, i, k] += v
    return circ


def _scale_circ(c, circ):
    """Scale ``circ`` so that the quadratic identity holds, or return None.

    With ``o = s * circ`` the identity reads ``s^2 Q + s Lin = 0``.
    """
    q = exact_einsum("bcm,aml->abcl", circ, circ)
    lin = importan1_defect(c, circ) - q
    if is_zero(lin):
        return circ if is_zero(q) else None
    idx = next(i for i, x in enumerate(lin.flat) if x != 0)
    kappa = q.flat[idx] / lin.flat[idx]
    if kappa == 0 or not np.all(q == kappa * lin):
        return None
    return circ * (-1 / kappa)


def random_cotangent_over(base, rng, tries=60):
    """Random valid :class:`CotangentData` over ``base``; RuntimeError if none found."""
    n = base.dim
    c = base.product
    for _ in range(tries):
        circ = zeros((n, n, n))
        if n and rng.random() < 0.6:
            for _ in range(30):
                scaled = _scale_circ(c, _circ_candidate(rng, n))
                if scaled is not None and not is_zero(scaled):
                    circ = scaled
                    break
        f = zeros((n, n, n))
        if n and rng.random() < 0.7:
            for v in f_cocycle_space(base, circ):
                f = f + rng.choice((-2, -1, 0, 1, 2)) * v
        d = CotangentData(base, circ, f)
        if validate_cotangent(d).passed:
            return d
    raise RuntimeError("no valid cotangent data found over this base")
