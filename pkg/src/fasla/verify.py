"""Decision procedures for the defining identities of FASLAs.

Every multilinear identity is checked on basis tuples in lexicographic
order; multilinearity makes that exhaustive.  Failures carry the first
offending index tuple and the first nonzero coordinate of the discrepancy.
"""

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import commutator_algebra
from .linalg import exact_einsum, exact_rank, zeros
from .serialize import format_scalar

__all__ = [
    "Check",
    "VerificationReport",
    "left_symmetric_defect",
    "jacobi_defect",
    "associator_tensor",
    "check_left_symmetric",
    "check_jacobi",
    "check_lie_bracket",
    "check_skew",
    "check_scalar_2cocycle",
    "check_compatibility",
    "check_nondegenerate",
    "check_fasla",
    "check_bimodule",
    "check_associative",
    "is_fasla",
]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: tuple = None
    discrepancy: Fraction = None

    def to_dict(self):
        return {
            "check": self.name,
            "passed": self.passed,
            "witness": list(self.witness) if self.witness is not None else None,
            "discrepancy": (format_scalar(self.discrepancy)
                            if self.discrepancy is not None else None),
        }


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return json.dumps([c.to_dict() for c in self.checks], indent=2)

    def to_table(self):
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"{'check':<{width}}  result  witness  discrepancy"]
        for c in self.checks:
            w = "-" if c.witness is None else ",".join(map(str, c.witness))
            d = "-" if c.discrepancy is None else format_scalar(c.discrepancy)
            lines.append(f"{c.name:<{width}}  {'pass' if c.passed else 'FAIL':<6}  {w:<7}  {d}")
        return "\n".join(lines)


def _first_nonzero(vec):
    for x in np.asarray(vec, dtype=object).flat:
        if x != 0:
            return x
    return None


def _scan(name, tuples, defect):
    """Run ``defect`` over index tuples; stop at the first nonzero value."""
    for idx in tuples:
        d = _first_nonzero(defect(*idx))
        if d is not None:
            return Check(name, False, tuple(idx), d)
    return Check(name, True)


def left_symmetric_defect(c, i, j, k):
    """(x,y,z) - (y,x,z) for the associator (x,y,z) = x(yz) - (xy)z on basis vectors."""
    # x(yz) = sum_m c[j,k,m] c[i,m,:]
    xyz = c[j, k] @ c[i] - c[i, j] @ c[:, k]
    yxz = c[i, k] @ c[j] - c[j, i] @ c[:, k]
    return xyz - yxz


def associator_tensor(c):
    """``[i, j, k, :] = e_i(e_j e_k) - (e_i e_j) e_k``."""
    return exact_einsum("jkm,iml->ijkl", c, c) - exact_einsum("ijm,mkl->ijkl", c, c)


def jacobi_defect(b, i, j, k):
    """[[x,y],z] + [[y,z],x] + [[z,x],y] on basis vectors for a bracket tensor."""
    return b[i, j] @ b[:, k] + b[j, k] @ b[:, i] + b[k, i] @ b[:, j]


def check_left_symmetric(a):
    c = a.product
    n = a.dim
    assoc = associator_tensor(c)
    defect = assoc - assoc.transpose(1, 0, 2, 3)
    triples = ((i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(n))
    report = VerificationReport()
    report.add(_scan("left_symmetric", triples, lambda i, j, k: defect[i, j, k]))
    return report


def check_lie_bracket(bracket, name="jacobi"):
    """Antisymmetry and Jacobi for a bracket given as an algebra tensor."""
    b = bracket.product
    n = bracket.dim
    report = VerificationReport()
    pairs = ((i, j) for i in range(n) for j in range(i, n))
    report.add(_scan("antisymmetry", pairs, lambda i, j: b[i, j] + b[j, i]))
    jac = (exact_einsum("ijm,mkl->ijkl", b, b) + exact_einsum("jkm,mil->ijkl", b, b)
           + exact_einsum("kim,mjl->ijkl", b, b))
    triples = itertools.combinations(range(n), 3)
    report.add(_scan(name, triples, lambda i, j, k: jac[i, j, k]))
    return report


def check_jacobi(a):
    """Whether the commutator of ``a`` is a Lie bracket."""
    return check_lie_bracket(commutator_algebra(a))


def check_skew(omega):
    g = omega.gram
    n = omega.dim
    pairs = ((i, j) for i in range(n) for j in range(i, n))
    return _scan("skew", pairs, lambda i, j: g[i, j] + g[j, i])


def _cocycle_check(bracket_tensor, g, name="scalar_2cocycle"):
    n = g.shape[0]
    bg = exact_einsum("ijm,mk->ijk", bracket_tensor, g)

    def cyc(i, j, k):
        return bg[i, j, k] + bg[j, k, i] + bg[k, i, j]

    return _scan(name, itertools.combinations(range(n), 3), cyc)


def check_scalar_2cocycle(a, omega):
    """Cyclic sum omega([x,y],z) + ... over the commutator of ``a``."""
    report = VerificationReport()
    report.add(_cocycle_check(commutator_algebra(a).product, _gram(omega)))
    return report


def _gram(omega):
    # accept raw matrices so that non-skew forms can be tested too
    return omega.gram if hasattr(omega, "gram") else np.asarray(omega, dtype=object)


def check_compatibility(a, omega):
    """omega(x.y, z) + omega(y, x.z) = 0 on basis triples.

    ``omega`` may be a :class:`SymplecticForm` or any square Gram matrix.
    """
    c = a.product
    g = _gram(omega)
    n = a.dim

    defect = exact_einsum("ijm,mk->ijk", c, g) + exact_einsum("jm,ikm->ijk", g, c)
    report = VerificationReport()
    triples = itertools.product(range(n), repeat=3)
    report.add(_scan("compatibility", triples, lambda i, j, k: defect[i, j, k]))
    return report


def check_nondegenerate(omega):
    """True iff the Gram matrix has full rank (always false in odd dimension)."""
    n = omega.dim
    if n % 2:
        return False
    return exact_rank(omega.gram) == n


def check_fasla(t):
    """Full FASLA axiom check, one report line per axiom."""
    a, omega = t.algebra, t.omega
    report = VerificationReport()
    report.extend(check_left_symmetric(a))
    report.extend(check_jacobi(a))
    report.add(check_skew(omega))
    report.add(Check("nondegenerate", check_nondegenerate(omega)))
    report.extend(check_scalar_2cocycle(a, omega))
    report.extend(check_compatibility(a, omega))
    return report


def is_fasla(t):
    return check_fasla(t).passed


def check_bimodule(b, left_action, right_action):
    """Bimodule axioms for actions indexed by the basis of ``b``.

    ``left_action[i]`` is the matrix of ``v -> e_i . v`` and ``right_action[i]``
    the matrix of ``v -> v [] e_i`` on a module of dimension m.
    """
    n = b.dim
    left = [np.asarray(m, dtype=object) for m in left_action]
    right = [np.asarray(m, dtype=object) for m in right_action]
    if len(left) != n or len(right) != n:
        raise ValueError("need one action matrix per basis vector of the algebra")
    shapes = {m.shape for m in left + right}
    if len(shapes) > 1 or (shapes and len(next(iter(shapes))) != 2):
        raise ValueError(f"action matrices have inconsistent shapes {shapes}")
    m = next(iter(shapes))[0] if shapes else 0
    if shapes and next(iter(shapes)) != (m, m):
        raise ValueError("action matrices must be square")
    c = b.product
    br = c - c.transpose(1, 0, 2)
    if n == 0 or m == 0:
        lt = rt = zeros((n, m, m))
    else:
        lt = np.array(left, dtype=object).reshape(n, m, m)
        rt = np.array(right, dtype=object).reshape(n, m, m)

    def prod(x, y):
        return exact_einsum("irs,jst->ijrt", x, y)

    # [i, j, :, v]
    b1 = prod(lt, lt) - prod(lt, lt).transpose(1, 0, 2, 3) - exact_einsum("ijw,wrt->ijrt", br, lt)
    b2 = (prod(lt, rt) - prod(rt, lt).transpose(1, 0, 2, 3)
          - exact_einsum("ijw,wrt->ijrt", c, rt) + prod(rt, rt).transpose(1, 0, 2, 3))

    report = VerificationReport()
    idx = [(i, j, v) for i in range(n) for j in range(n) for v in range(m)]
    report.add(_scan("bimodule_left_representation", idx, lambda i, j, v: b1[i, j, :, v]))
    report.add(_scan("bimodule_mixed", idx, lambda i, j, v: b2[i, j, :, v]))
    return report


def check_associative(a):
    return _first_nonzero(associator_tensor(a.product)) is None
