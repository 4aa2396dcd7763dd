"""Completeness, the Chu product, the etale affine representation and
central translations.

Geodesic completeness of a FASLA is decided exactly by ``tr(R_x) = 0`` on a
basis (equivalently unimodularity).  Nilpotency of right multiplications is
also tested on the basis and on seeded random vectors; that sampled test can
refute completeness but never proves it.
"""

import math
import os
import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    Algebra,
    ad_matrix,
    basis_vector,
    commutator_algebra,
    left_mult_matrix,
    right_mult_matrix,
)
from .linalg import (
    as_rational,
    exact_einsum,
    eye,
    inverse,
    is_nilpotent,
    is_zero,
    min_poly,
    nilpotency_index,
    trace,
    zeros,
)
from .verify import (
    Check,
    VerificationReport,
    check_associative,
    check_compatibility,
    check_fasla,
    check_left_symmetric,
    check_lie_bracket,
    check_nondegenerate,
)

__all__ = [
    "SAMPLE_COUNT",
    "sampling_seed",
    "sample_vectors",
    "CompletenessReport",
    "completeness",
    "chu_connection",
    "AffineSymplecticElement",
    "NonNilpotentExponential",
    "etale_representation",
    "approx_etale",
    "symplectic_check",
    "compose_affine",
    "central_translations",
    "translation_directions",
    "BiinvariantReport",
    "biinvariant_analysis",
    "CotangentCompleteness",
    "cotangent_completeness",
]

SAMPLE_COUNT = 8


def sampling_seed():
    """Seed for the nilpotency falsifiers, overridable with ``FASLA_SEED``."""
    raw = os.environ.get("FASLA_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"FASLA_SEED must be an integer, got {raw!r}") from None


def sample_vectors(n, count=SAMPLE_COUNT, seed=None):
    """Seeded random vectors with entries in {-2, ..., 2}."""
    rng = random.Random(sampling_seed() if seed is None else seed)
    return [as_rational([rng.randint(-2, 2) for _ in range(n)]) for _ in range(count)] if n else []


def _probe_vectors(n, seed=None):
    return [basis_vector(n, i) for i in range(n)] + sample_vectors(n, seed=seed)


@dataclass(frozen=True)
class CompletenessReport:
    unimodular: bool
    traces_L: tuple
    traces_R: tuple
    traces_ad: tuple
    right_mults_nilpotent: bool
    verdict: str
    non_nilpotent_witness: tuple = None

    @property
    def complete(self):
        return self.verdict == "complete"

    def to_dict(self):
        from .serialize import format_scalar

        def fmt(xs):
            return [format_scalar(x) for x in xs]

        return {
            "verdict": self.verdict,
            "unimodular": self.unimodular,
            "traces_L": fmt(self.traces_L),
            "traces_R": fmt(self.traces_R),
            "traces_ad": fmt(self.traces_ad),
            "right_mults_nilpotent_sampled": self.right_mults_nilpotent,
            "non_nilpotent_witness": (None if self.non_nilpotent_witness is None
                                      else fmt(self.non_nilpotent_witness)),
        }


def completeness(t, seed=None, verify=True):
    """Completeness analysis of a FASLA.

    The verdict follows ``tr(R_x) = 0`` on the basis.  ``right_mults_nilpotent``
    reports the sampled nilpotency test, which is a falsifier only.
    """
    if verify:
        rep = check_fasla(t)
        if not rep.passed:
            raise ValueError("completeness needs a FASLA; failed: "
                             + ", ".join(c.name for c in rep.failures))
    a = t.algebra
    n = a.dim
    basis = [basis_vector(n, i) for i in range(n)]
    tl = tuple(trace(left_mult_matrix(a, x)) for x in basis)
    tr = tuple(trace(right_mult_matrix(a, x)) for x in basis)
    tad = tuple(trace(ad_matrix(a, x)) for x in basis)
    if any(tl):
        raise AssertionError("tr(L_x) is nonzero on a FASLA basis vector")
    witness = None
    for x in _probe_vectors(n, seed):
        if not is_nilpotent(right_mult_matrix(a, x)):
            witness = tuple(x)
            break
    unimodular = not any(tad)
    complete = not any(tr)
    return CompletenessReport(
        unimodular=unimodular,
        traces_L=tl,
        traces_R=tr,
        traces_ad=tad,
        right_mults_nilpotent=witness is None,
        verdict="complete" if complete else "incomplete",
        non_nilpotent_witness=witness,
    )


def chu_connection(bracket, omega):
    """The product with ``omega(x.y, z) = -omega(y, [x, z])``.

    ``bracket`` is a Lie algebra given as an :class:`Algebra`.  The product is
    ``L_x = -G^{-1} ad_x^T G``.  Raises ValueError on a degenerate or
    non-cocycle form.
    """
    from .verify import check_scalar_2cocycle

    rep = check_lie_bracket(bracket)
    if not rep.passed:
        raise ValueError("input bracket is not a Lie bracket")
    if not check_nondegenerate(omega):
        raise ValueError("omega is degenerate")
    # a Lie bracket is its own half-commutator; check the cocycle on it directly
    n = bracket.dim
    half = Algebra(bracket.product / 2 if n else bracket.product)
    if not check_scalar_2cocycle(half, omega).passed:
        raise ValueError("omega is not a 2-cocycle for the bracket")
    g = omega.gram
    ginv = inverse(g) if n else g
    c = zeros((n, n, n))
    for i in range(n):
        lx = -ginv @ _ad(bracket, i).T @ g
        c[i] = lx.T
    prod = Algebra(c, bracket.labels)
    if not check_left_symmetric(prod).passed:  # pragma: no cover
        raise AssertionError("Chu product is not left-symmetric")
    if not commutator_algebra(prod) == Algebra(bracket.product):  # pragma: no cover
        raise AssertionError("Chu product does not recover the bracket")
    abelian = is_zero(bracket.product)
    if check_compatibility(prod, omega).passed != abelian:  # pragma: no cover
        raise AssertionError("compatibility should hold exactly for abelian brackets")
    return prod


def _ad(bracket, i):
    # ad_{e_i}[k, j] = [e_i, e_j]_k
    return bracket.product[i].T


# -- etale representation ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class AffineSymplecticElement:
    """Affine map ``v -> linear @ v + translation``."""

    translation: np.ndarray
    linear: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "translation", as_rational(self.translation))
        object.__setattr__(self, "linear", as_rational(self.linear))

    @classmethod
    def identity(cls, n):
        return cls(zeros(n), eye(n))

    def __eq__(self, other):
        return (isinstance(other, AffineSymplecticElement)
                and self.linear.shape == other.linear.shape
                and bool(np.all(self.translation == other.translation))
                and bool(np.all(self.linear == other.linear)))

    __hash__ = None

    def apply(self, v):
        return self.linear @ as_rational(v) + self.translation


class NonNilpotentExponential(ArithmeticError):
    """``L_x`` is not nilpotent, so the exponential series does not terminate."""

    def __init__(self, x, min_poly):
        self.x = tuple(x)
        self.min_poly = tuple(min_poly)
        from .serialize import format_scalar

        poly = " ".join(format_scalar(c) for c in self.min_poly)
        super().__init__(f"non-nilpotent exponential: L_x has minimal polynomial "
                         f"coefficients [{poly}] (highest degree first)")


def etale_representation(t, x, order_cap=None):
    """Exact ``(Q, F)`` with ``Q = sum (1/k!) L_x^(k-1) x`` and ``F = Exp(L_x)``.

    Only defined when ``L_x`` is nilpotent; the series then stop before the
    nilpotency index.
    """
    a = t.algebra
    n = a.dim
    x = as_rational(x)
    lx = left_mult_matrix(a, x)
    k0 = nilpotency_index(lx)
    if k0 is None:
        raise NonNilpotentExponential(x, min_poly(lx))
    if order_cap is not None and order_cap < k0:
        raise ValueError(f"order cap {order_cap} is below the nilpotency index {k0}")
    q = zeros(n)
    f = zeros((n, n))
    power = eye(n)
    for k in range(k0 + 1):
        # power = L^k here
        f = f + power / math.factorial(k)
        # L^(k) x / (k+1)!
        q = q + (power @ x) / math.factorial(k + 1)
        power = power @ lx
    return AffineSymplecticElement(q, f)


def approx_etale(t, x, order):
    """Floating truncation of the etale series at ``order`` terms.

    Returns ``(Q, F, bound)`` where ``bound`` estimates the tail using
    ``sum_{k > N} |L|^k / k! <= |L|^(N+1) / (N+1)! * exp(|L|)`` in the
    operator 2-norm.  For exploration only.
    """
    xr = as_rational(x)
    lx = np.array(left_mult_matrix(t.algebra, xr), dtype=float)
    x = np.array(xr, dtype=float)
    n = lx.shape[0]
    q = np.zeros(n)
    f = np.zeros((n, n))
    power = np.eye(n)
    for k in range(order + 1):
        f += power / math.factorial(k)
        q += power @ x / math.factorial(k + 1)
        power = power @ lx
    norm = float(np.linalg.norm(lx, 2)) if n else 0.0
    bound = norm ** (order + 1) / math.factorial(order + 1) * math.exp(norm)
    return q, f, bound


def symplectic_check(el, omega):
    g = omega.gram
    return bool(np.all(el.linear.T @ g @ el.linear == g))


def compose_affine(a, b):
    """``(Q_a + F_a Q_b, F_a F_b)``."""
    return AffineSymplecticElement(a.translation + a.linear @ b.translation,
                                   a.linear @ b.linear)


def central_translations(t):
    """Basis of ``{b : L_b = 0 and R_b = 0}``."""
    from .double_extension import find_degenerate_ideal_vectors

    return find_degenerate_ideal_vectors(t)


def translation_directions(t):
    """Basis of ``ker L = {b : L_b = 0}``.

    Each such ``b`` gives the one-parameter family ``(t b, Id)``; it commutes
    with the whole image only when also ``R_b = 0``.
    """
    from .linalg import exact_nullspace

    a = t.algebra
    n = a.dim
    if n == 0:
        return []
    # (b . e_j)_k = sum_i b_i c[i, j, k]
    rows = a.product.transpose(1, 2, 0).reshape(n * n, n)
    return exact_nullspace(rows)


# -- bi-invariant case ---------------------------------------------------------

@dataclass
class BiinvariantReport:
    report: VerificationReport
    power_chain_dims: list
    central: list = field(default_factory=list)
    steps: object = None

    @property
    def passed(self):
        return self.report.passed


def _power_chain(a):
    """Dimensions of g, g^2 = g.g, g^(k+1) = g.g^k until they stabilise."""
    from .linalg import column_space_basis

    n = a.dim
    cur = [basis_vector(n, i) for i in range(n)]
    dims = [len(cur)]
    while cur:
        nxt = column_space_basis([a.mul(basis_vector(n, i), v) for i in range(n) for v in cur])
        if len(nxt) == len(cur):
            break
        cur = nxt
        dims.append(len(cur))
    return dims


def biinvariant_analysis(t):
    """Structure of an associative FASLA.

    Checks ``L_x L_y + L_y L_x = 0`` and ``L_x^2 = 0`` on the basis, that the
    power chain reaches zero, that central translations exist and that the
    greedy decomposition reaches dimension 0.
    """
    from .double_extension import decompose_to_zero

    a = t.algebra
    if not check_associative(a):
        raise ValueError("bi-invariant analysis needs an associative product")
    n = a.dim
    ls = [left_mult_matrix(a, basis_vector(n, i)) for i in range(n)]
    report = VerificationReport()
    anti = next(((i, j) for i in range(n) for j in range(i, n)
                 if not is_zero(ls[i] @ ls[j] + ls[j] @ ls[i])), None)
    report.add(Check("L_anticommute", anti is None, anti))
    sq = next(((i,) for i in range(n) if not is_zero(ls[i] @ ls[i])), None)
    report.add(Check("L_square_zero", sq is None, sq))
    chain = _power_chain(a)
    report.add(Check("algebra_nilpotent", n == 0 or chain[-1] == 0))
    central = central_translations(t)
    report.add(Check("central_translation_exists", n == 0 or bool(central)))
    steps = decompose_to_zero(t)
    report.add(Check("decomposes_to_zero", bool(steps) or n == 0))
    return BiinvariantReport(report, chain, central, steps)


# -- cotangent case --------------------------------------------------------------

@dataclass(frozen=True)
class CotangentCompleteness:
    base_right_nilpotent: bool
    circ_nilpotent: bool
    built_right_nilpotent: bool
    built_trace_complete: bool
    hess_base_complete: bool

    @property
    def agree(self):
        return (self.base_right_nilpotent and self.circ_nilpotent) == self.built_right_nilpotent

    @property
    def complete(self):
        return self.built_right_nilpotent

    def to_dict(self):
        return {
            "base_right_nilpotent": self.base_right_nilpotent,
            "circ_nilpotent": self.circ_nilpotent,
            "built_right_nilpotent": self.built_right_nilpotent,
            "built_trace_complete": self.built_trace_complete,
            "agree": self.agree,
        }


def cotangent_completeness(d, seed=None):
    """Compare nilpotency of ``R_a``, ``L'_a`` on the base with that of the
    built algebra's right multiplications.

    Both sides use the same probes: basis vectors plus seeded samples
    ``alpha + a`` whose B-part ``a`` is also the base probe.
    """
    from .cotangent import twisted_cotangent

    n = d.dim
    base = d.base
    t = twisted_cotangent(d)
    big = t.algebra
    probes = _probe_vectors(2 * n, seed)
    base_ok = circ_ok = built_ok = True
    for v in probes:
        a_part = v[n:]
        if not is_nilpotent(right_mult_matrix(base, a_part)):
            base_ok = False
        # L'_a[k, j] = (a o e_j)_k
        lp = exact_einsum("i,ijk->kj", a_part, d.circ)
        if not is_nilpotent(lp):
            circ_ok = False
        if not is_nilpotent(right_mult_matrix(big, v)):
            built_ok = False
    traces = [trace(right_mult_matrix(big, basis_vector(2 * n, i))) for i in range(2 * n)]
    hess_ok = all(trace(right_mult_matrix(base, basis_vector(n, i))) == 0 for i in range(n))
    return CotangentCompleteness(base_ok, circ_ok, built_ok, not any(traces), hess_ok)
