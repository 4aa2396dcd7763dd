"""Built-in FASLAs: the dimension-2 tables, the even-dimensional family over
an abelian base, and cotangent examples.

Every entry of :func:`paper_suite` carries expected annotations that are
recomputed and compared when the suite is built.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Algebra, FaslaTriple, SymplecticForm, adjoint, standard_omega
from .double_extension import ExtensionParams, decompose_to_zero, double_extend
from .linalg import as_rational, is_zero, zeros
from .serialize import format_scalar
from .verify import check_associative, check_fasla

__all__ = [
    "CatalogEntry",
    "CatalogError",
    "TABLE_NOTE",
    "zero_triple",
    "aff_r",
    "dim2_family",
    "default_D",
    "even_dim_family",
    "paper_suite",
    "entry_names",
    "get_entry",
    "compute_annotations",
]

TABLE_NOTE = ("printed table for lambda = mu/2 shows d.d = beta e - (mu/2) e; "
              "built from the general rule d.d = beta e + x0 - lambda d instead")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: dict
    triple: FaslaTriple
    expected: dict
    meta: dict = field(default_factory=dict)


def zero_triple():
    return FaslaTriple(Algebra.zero(0), SymplecticForm(zeros((0, 0))))


def dim2_family(beta, lam, mu):
    """The dimension-2 FASLA on ``(e, d)`` with ``omega(e, d) = 1``.

    Products: ``d.d = beta e - lam d``, ``d.e = lam e``, ``e.d = (lam - mu) e``,
    all others zero.  Requires ``lam = mu`` or ``lam = mu/2``.
    """
    beta, lam, mu = Fraction(beta), Fraction(lam), Fraction(mu)
    if lam != mu and 2 * lam != mu:
        raise CatalogError(f"need lambda = mu or lambda = mu/2, got lambda={lam}, mu={mu}")
    table = {(1, 1): {0: beta, 1: -lam}, (1, 0): {0: lam}, (0, 1): {0: lam - mu}}
    g = zeros((2, 2))
    g[0, 1], g[1, 0] = Fraction(1), Fraction(-1)
    meta = {"family": "dim2", "beta": beta, "lambda": lam, "mu": mu}
    if 2 * lam == mu and mu != 0:
        meta["table_note"] = TABLE_NOTE
    t = FaslaTriple(Algebra.from_table(2, table, ("e", "d")), SymplecticForm(g), meta)
    built = double_extend(zero_triple(), ExtensionParams.zero(0, beta, lam, mu))
    if built.algebra.product.tolist() != t.algebra.product.tolist():  # pragma: no cover
        raise AssertionError("dimension-2 table disagrees with the double extension")
    return t


def aff_r():
    """The non-abelian dimension-2 left-symmetric algebra ``d.e = e, d.d = -d``."""
    return dim2_family(0, 1, 1).algebra


def default_D(n):
    """Nilpotent element of sp on the Darboux basis ``(p_1, q_1, ...)``: q_1 -> p_1."""
    m = 2 * n - 2
    d = zeros((m, m))
    if m:
        d[0, 1] = Fraction(1)
    return d


def _abelian_base(n):
    m = n - 1
    labels = tuple(f"{s}{i + 1}" for i in range(m) for s in ("p", "q"))
    return FaslaTriple(Algebra.zero(2 * m, labels), standard_omega(m))


def even_dim_family(n, D=None, mu=0, lam=None, beta=0, x0=None):
    """Dimension-2n FASLA extending the abelian ``(Q^(2n-2), 0, omega_0)`` with
    ``u = 0`` and ``z0 = x0``."""
    if n < 1:
        raise CatalogError("n must be at least 1")
    m = 2 * n - 2
    base = _abelian_base(n)
    D = default_D(n) if D is None else as_rational(D)
    x0 = zeros(m) if x0 is None else as_rational(x0)
    mu = Fraction(mu)
    lam = mu if lam is None else Fraction(lam)
    if D.shape != (m, m) or x0.shape != (m,):
        raise CatalogError(f"D must be {m}x{m} and x0 of length {m}")
    if m and not is_zero(D + adjoint(base.omega, D)):
        raise CatalogError("D is not in sp(omega_0)")
    if lam != mu:
        if 2 * lam != mu:
            raise CatalogError("need lambda = mu or lambda = mu/2")
        if not is_zero(x0):
            raise CatalogError("lambda = mu/2 != mu forces x0 = 0")
    p = ExtensionParams(zeros((m, m)), D, x0, x0, beta, lam, mu)
    t = double_extend(base, p)
    meta = {"family": "even-dim", "n": n}
    return FaslaTriple(t.algebra, t.omega, meta)


# -- annotations ---------------------------------------------------------------

def _hess1_bracket_matches(t, n):
    """Bracket of the Hess product against ``[x,y] + L*_x(beta) - L*_y(alpha)``."""
    c = t.algebra.product
    br = c - c.transpose(1, 0, 2)
    base = c[n:, n:, n:]
    want = zeros((2 * n, 2 * n, 2 * n))
    want[n:, n:, n:] = base - base.transpose(1, 0, 2)
    # [e_i, e*_j] = L*_{e_i}(e*_j) with coordinates -c[i, r, j]
    want[n:, :n, :n] = -base.transpose(0, 2, 1)
    want[:n, n:, :n] = base.transpose(2, 0, 1)
    return bool(np.all(br == want))


def compute_annotations(t, keys):
    from .dynamics import central_translations, completeness

    out = {}
    for k in keys:
        if k == "complete":
            out[k] = completeness(t).complete
        elif k == "unimodular":
            out[k] = completeness(t).unimodular
        elif k == "associative":
            out[k] = check_associative(t.algebra)
        elif k == "central_dim":
            out[k] = len(central_translations(t))
        elif k == "e_central":
            vecs = central_translations(t)
            e = zeros(t.dim)
            e[0] = Fraction(1)
            from .linalg import exact_rank

            out[k] = bool(vecs) and exact_rank(np.array(vecs + [e], dtype=object)) == len(vecs)
        elif k == "decomposable":
            out[k] = bool(decompose_to_zero(t))
        elif k == "hess1_bracket":
            out[k] = _hess1_bracket_matches(t, t.dim // 2)
        else:
            raise KeyError(k)
    return out


def _entry(name, params, t, expected, meta=None):
    rep = check_fasla(t)
    if not rep.passed:  # pragma: no cover
        raise CatalogError(f"{name} fails the FASLA axioms: {rep.failures}")
    got = compute_annotations(t, expected)
    bad = {k: (expected[k], got[k]) for k in expected if expected[k] != got[k]}
    if bad:  # pragma: no cover
        raise CatalogError(f"{name}: annotations disagree {bad}")
    return CatalogEntry(name, params, t, expected, dict(meta or t.meta))


def _params(**kw):
    return {k: (format_scalar(v) if isinstance(v, (int, Fraction)) else v) for k, v in kw.items()}


def paper_suite():
    """The fixed list of catalog entries, each checked against its annotations."""
    from .cotangent import CotangentData, hess_product, twisted_cotangent

    entries = []
    dim2 = [
        ("dim2-abelian-beta0", (0, 0, 0),
         dict(complete=True, unimodular=True, associative=True, central_dim=2,
              e_central=True, decomposable=True)),
        ("dim2-abelian-beta1", (1, 0, 0),
         dict(complete=True, unimodular=True, associative=True, central_dim=1,
              e_central=True, decomposable=True)),
        ("dim2-lambda-eq-mu", (0, 1, 1),
         dict(complete=False, unimodular=False, associative=False, central_dim=0,
              decomposable=True)),
        ("dim2-lambda-half-mu", (0, 1, 2),
         dict(complete=False, unimodular=False, associative=False, central_dim=0,
              decomposable=True)),
    ]
    for name, (b, l, m), exp in dim2:
        t = dim2_family(b, l, m)
        entries.append(_entry(name, _params(family="dim2", beta=b, **{"lambda": l}, mu=m),
                              t, exp))
    t = even_dim_family(2)
    entries.append(_entry("even-dim-n2", _params(family="even-dim", n=2, D="default", mu=0,
                                                 beta=0, x0="0"),
                          t, dict(complete=True, unimodular=True, associative=True,
                                  central_dim=2, e_central=True, decomposable=True)))
    x0 = zeros(4)
    x0[0] = Fraction(1)
    t = even_dim_family(3, D=zeros((4, 4)), mu=1, lam=1, beta=0, x0=x0)
    entries.append(_entry("even-dim-n3", _params(family="even-dim", n=3, D="0", mu=1, beta=0,
                                                 x0="p1"),
                          t, dict(complete=False, unimodular=False, associative=False,
                                  central_dim=4, e_central=False)))
    t = hess_product(aff_r())
    entries.append(_entry("cotangent-aff(R)-hess", _params(family="hess", base="aff(R)"),
                          t, dict(complete=False, unimodular=False, associative=False,
                                  central_dim=0, hess1_bracket=True)))
    line = Algebra.from_table(1, {(0, 0): {0: 1}}, ("a",))
    f = zeros((1, 1, 1))
    f[0, 0, 0] = Fraction(1)
    t = twisted_cotangent(CotangentData(line, zeros((1, 1, 1)), f))
    entries.append(_entry("cotangent-line-symmetric-f",
                          _params(family="twisted-cotangent", base="a.a=a", circ="0",
                                  f="f(a,a)=a*"),
                          t, dict(complete=False, unimodular=False, associative=False,
                                  central_dim=0, decomposable=True)))
    return entries


def entry_names():
    return [e.name for e in paper_suite()]


def get_entry(name):
    for e in paper_suite():
        if e.name == name:
            return e
    raise KeyError(name)
