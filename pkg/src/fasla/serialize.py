"""Canonical JSON text formats for algebras, parameter packs and cochains.

Scalars are written as ``"p"`` or ``"p/q"`` strings in lowest terms with
``q > 0``.  Readers accept unreduced fractions and plain JSON integers.
Writers are deterministic, so serialize -> parse -> serialize is
byte-identical.
"""

import json
from fractions import Fraction

import numpy as np

__all__ = [
    "FormatError",
    "format_scalar",
    "parse_scalar",
    "encode_array",
    "decode_array",
    "dumps",
    "loads",
    "triple_to_doc",
    "doc_to_triple",
    "algebra_to_doc",
    "dump_triple",
    "load_triple",
    "read_json",
    "params_to_doc",
    "doc_to_params",
    "cotangent_to_doc",
    "doc_to_cotangent",
    "doc_to_algebra",
]


class FormatError(ValueError):
    """Malformed input file.  ``line``/``column`` are 1-based when known."""

    def __init__(self, msg, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(msg + where)
        self.line = line
        self.column = column


def format_scalar(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(s):
    if isinstance(s, bool):
        raise FormatError(f"boolean {s!r} is not a scalar")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            num, _, den = s.strip().partition("/")
            q = Fraction(int(num), int(den) if den else 1)
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad rational literal {s!r}") from None
        return q
    raise FormatError(f"expected a rational string, got {s!r}")


def encode_array(a):
    a = np.asarray(a, dtype=object)
    if a.ndim == 0:
        return format_scalar(a.item())
    return [encode_array(x) for x in a]


def decode_array(obj, ndim, shape=None):
    """Parse nested lists of scalars into an object array of exactly ``ndim`` axes."""
    def rec(o, depth):
        if depth == 0:
            return parse_scalar(o)
        if not isinstance(o, list):
            raise FormatError(f"expected a nested list of depth {ndim}")
        return [rec(x, depth - 1) for x in o]

    nested = rec(obj, ndim)
    if shape is not None and 0 in shape:
        arr = np.empty(shape, dtype=object)
    else:
        arr = np.empty(_shape_of(nested, ndim), dtype=object)
        for idx in np.ndindex(arr.shape):
            x = nested
            for i in idx:
                x = x[i]
            arr[idx] = x
    if shape is not None and arr.shape != tuple(shape):
        raise FormatError(f"expected array of shape {tuple(shape)}, got {arr.shape}")
    return arr


def _shape_of(nested, ndim):
    shape = []
    x = nested
    for _ in range(ndim):
        shape.append(len(x))
        x = x[0] if x else None
        if x is None:
            shape.extend([0] * (ndim - len(shape)))
            break
    _check_rect(nested, shape)
    return tuple(shape)


def _check_rect(x, shape):
    if not shape:
        return
    if len(x) != shape[0]:
        raise FormatError("ragged nested list")
    for y in x:
        _check_rect(y, shape[1:])


def dumps(doc):
    return json.dumps(doc, ensure_ascii=False) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def algebra_to_doc(algebra, omega=None):
    return {
        "dim": algebra.dim,
        "field": "rational",
        "product": encode_array(algebra.product),
        "omega": None if omega is None else encode_array(omega.gram),
        "labels": None if algebra.labels is None else list(algebra.labels),
    }


def triple_to_doc(t):
    return algebra_to_doc(t.algebra, t.omega)


def doc_to_algebra(doc):
    """Return ``(Algebra, SymplecticForm or None)`` from a parsed document."""
    from .algebra import Algebra, SymplecticForm

    if not isinstance(doc, dict):
        raise FormatError("algebra document must be a JSON object")
    for key in ("dim", "product"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError(f"dim must be a non-negative integer, got {n!r}")
    if doc.get("field", "rational") != "rational":
        raise FormatError(f"unsupported field {doc.get('field')!r}")
    product = decode_array(doc["product"], 3, (n, n, n))
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise FormatError("labels must be a list with one entry per basis vector")
    algebra = Algebra(product, labels)
    omega = None
    if doc.get("omega") is not None:
        gram = decode_array(doc["omega"], 2, (n, n))
        try:
            omega = SymplecticForm(gram)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    return algebra, omega


def doc_to_triple(doc):
    from .algebra import FaslaTriple

    algebra, omega = doc_to_algebra(doc)
    if omega is None:
        raise FormatError("a triple needs a non-null 'omega'")
    return FaslaTriple(algebra, omega)


def dump_triple(t, path=None):
    text = dumps(triple_to_doc(t))
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def load_triple(path):
    return doc_to_triple(read_json(path))


def params_to_doc(p):
    return {
        "u": encode_array(p.u),
        "D": encode_array(p.D),
        "x0": encode_array(p.x0),
        "z0": encode_array(p.z0),
        "beta": format_scalar(p.beta),
        "lambda": format_scalar(p.lam),
        "mu": format_scalar(p.mu),
    }


def doc_to_params(doc, n=None):
    """Parse an extension-parameter document; ``n`` is the base dimension if known."""
    from .double_extension import ExtensionParams

    if not isinstance(doc, dict):
        raise FormatError("parameter document must be a JSON object")
    for key in ("u", "D", "x0", "z0", "beta", "lambda", "mu"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    if n is None:
        x0 = doc["x0"]
        n = len(x0) if isinstance(x0, list) else 0
    try:
        return ExtensionParams(
            decode_array(doc["u"], 2, (n, n)),
            decode_array(doc["D"], 2, (n, n)),
            decode_array(doc["x0"], 1, (n,)),
            decode_array(doc["z0"], 1, (n,)),
            parse_scalar(doc["beta"]),
            parse_scalar(doc["lambda"]),
            parse_scalar(doc["mu"]),
        )
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from None


def cotangent_to_doc(d):
    return {
        "base": algebra_to_doc(d.base),
        "circ": encode_array(d.circ),
        "f": encode_array(d.f),
    }


def doc_to_cotangent(doc):
    from .cotangent import CotangentData

    if not isinstance(doc, dict):
        raise FormatError("cotangent document must be a JSON object")
    for key in ("base", "circ", "f"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    base, _omega = doc_to_algebra(doc["base"])
    n = base.dim
    return CotangentData(base, decode_array(doc["circ"], 3, (n, n, n)),
                         decode_array(doc["f"], 3, (n, n, n)))
