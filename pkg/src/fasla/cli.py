"""Command-line front end.

Exit codes: 0 when a check passed or an analysis produced a verdict, 1 when
a check failed or a construction was refused, 2 on malformed input.
"""

import argparse
import sys

import numpy as np

from . import serialize as ser
from .serialize import FormatError, format_scalar

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Fail(Exception):
    """A failed check; the message goes to stdout, exit code 1."""


def _vec(v):
    return [format_scalar(x) for x in v]


def _emit(doc, out, stream):
    text = ser.dumps(doc)
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise FormatError(f"cannot write {out}: {exc.strerror}") from None
    else:
        stream.write(text)


def _load_triple(path, require_fasla=True):
    from .verify import check_fasla

    t = ser.load_triple(path)
    if require_fasla:
        rep = check_fasla(t)
        if not rep.passed:
            raise _Fail("input is not a FASLA\n" + rep.to_table())
    return t


def _parse_vector(text, n):
    parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    try:
        vals = [ser.parse_scalar(p) for p in parts]
    except FormatError:
        raise FormatError(f"bad vector {text!r}; expected comma-separated rationals") from None
    if len(vals) != n:
        raise FormatError(f"vector has {len(vals)} entries, expected {n}")
    return np.array(vals, dtype=object)


def _basis_index(i, n, flag):
    if not 0 <= i < n:
        raise FormatError(f"{flag} index {i} out of range 0..{n - 1}")
    from .algebra import basis_vector

    return basis_vector(n, i)


# -- subcommands -----------------------------------------------------------------

def cmd_verify(args, out):
    from .verify import check_fasla

    rep = check_fasla(ser.load_triple(args.input))
    out.write((rep.to_json() if args.format == "json" else rep.to_table()) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_double_extend(args, out):
    from .double_extension import double_extend, validate_extension

    base = _load_triple(args.base)
    params = ser.doc_to_params(ser.read_json(args.params), base.dim)
    rep = validate_extension(base, params)
    if not rep.passed:
        raise _Fail("extension data rejected\n" + rep.to_table())
    _emit(ser.triple_to_doc(double_extend(base, params, validate=False)), args.out, out)
    return EXIT_OK


def _pick_ideal(t):
    from .double_extension import _dual_partner, check_bilateral_ideal, find_one_dim_ideals

    for e in find_one_dim_ideals(t):
        if all(check_bilateral_ideal(t, e)):
            d = _dual_partner(t, e)
            if d is not None:
                return e, d
    raise _Fail("no 1-dim bilateral ideal with bilateral orthogonal found "
                "(heuristic search; not a proof of nonexistence)")


def _reduction_doc(r):
    return {
        "base": ser.triple_to_doc(r.base),
        "params": ser.params_to_doc(r.params),
        "e": _vec(r.e),
        "d": _vec(r.d),
        "basis_change": ser.encode_array(r.basis_change),
    }


def cmd_reduce(args, out):
    from .double_extension import ReductionError, _dual_partner, reduce_by_ideal

    t = _load_triple(args.input)
    n = t.dim
    if n == 0:
        raise _Fail("nothing to reduce in dimension 0")
    if args.e is None:
        e, d = _pick_ideal(t)
    else:
        e = _basis_index(args.e, n, "--e")
        d = None
    if args.d is not None:
        d = _basis_index(args.d, n, "--d")
        w = t.omega(e, d)
        if w == 0:
            raise _Fail("omega(e, d) = 0; choose another --d")
        d = d / w
    elif d is None:
        d = _dual_partner(t, e)
        if d is None:
            raise _Fail("e is in the kernel of omega")
    try:
        r = reduce_by_ideal(t, e, d)
    except (ReductionError, ValueError) as exc:
        raise _Fail(f"reduction failed: {exc}") from None
    _emit(_reduction_doc(r), args.out, out)
    return EXIT_OK


def cmd_decompose(args, out):
    from .double_extension import decompose_to_zero

    t = _load_triple(args.input)
    res = decompose_to_zero(t)
    if not res and t.dim:
        doc = {"success": False, "steps": [_reduction_doc(r) for r in res.steps],
               "stuck": ser.triple_to_doc(res.stuck), "reason": res.reason}
        _emit(doc, args.out, out)
        return EXIT_FAIL
    _emit({"success": True, "steps": [_reduction_doc(r) for r in res]}, args.out, out)
    return EXIT_OK


def cmd_cotangent(args, out):
    from .cotangent import hess_product, twisted_cotangent, validate_cotangent
    from .verify import check_left_symmetric

    if args.hess:
        if not args.base:
            raise FormatError("--hess needs --base")
        base, _ = ser.doc_to_algebra(ser.read_json(args.base))
        rep = check_left_symmetric(base)
        if not rep.passed:
            raise _Fail("base is not left-symmetric\n" + rep.to_table())
        t = hess_product(base)
    else:
        if not args.data:
            raise FormatError("need --data or --hess --base")
        d = ser.doc_to_cotangent(ser.read_json(args.data))
        rep = validate_cotangent(d)
        if not rep.passed:
            raise _Fail("cotangent data rejected\n" + rep.to_table())
        t = twisted_cotangent(d, validate=False)
    _emit(ser.triple_to_doc(t), args.out, out)
    return EXIT_OK


def cmd_detect_lagrangian(args, out):
    from .cotangent import LagrangianNotFound, detect_lagrangian_ideal

    t = _load_triple(args.input)
    try:
        det = detect_lagrangian_ideal(t)
    except LagrangianNotFound as exc:
        raise _Fail(f"not found: {exc}") from None
    doc = {"source": det.source, "ideal": [_vec(v) for v in det.ideal_basis],
           "data": ser.cotangent_to_doc(det.data),
           "basis_change": ser.encode_array(det.basis_change)}
    _emit(doc, args.out, out)
    return EXIT_OK


def _load_module(path, base):
    from .cohomology import Bimodule

    doc = ser.read_json(path)
    if not isinstance(doc, dict) or "module_dim" not in doc:
        raise FormatError("module file needs 'module_dim', 'left', 'right'")
    m = doc["module_dim"]
    n = base.dim
    left = ser.decode_array(doc.get("left"), 3, (n, m, m))
    right = ser.decode_array(doc.get("right"), 3, (n, m, m))
    return Bimodule(base, tuple(left), tuple(right), m)


def cmd_cohomology(args, out):
    from .cohomology import MAX_DEGREE, cohomology_dims, dual_bimodule, trivial_bimodule
    from .verify import check_left_symmetric

    a, _ = ser.doc_to_algebra(ser.read_json(args.input))
    rep = check_left_symmetric(a)
    if not rep.passed:
        raise _Fail("input is not left-symmetric\n" + rep.to_table())
    if not 0 <= args.degree <= MAX_DEGREE:
        raise FormatError(f"degree must be in 0..{MAX_DEGREE}")
    if args.module == "trivial":
        b = trivial_bimodule(a)
    elif args.module == "canonical-dual":
        b = dual_bimodule(a)
    else:
        if not args.module_file:
            raise FormatError("--module file needs --module-file")
        b = _load_module(args.module_file, a)
    brep = b.check()
    if not brep.passed:
        raise _Fail("module is not a bimodule\n" + brep.to_table())
    z, bd, h = cohomology_dims(b, args.degree)
    out.write(ser.dumps({"degree": args.degree, "module": args.module,
                         "dim_Z": z, "dim_B": bd, "dim_H": h}))
    return EXIT_OK


def cmd_complete(args, out):
    from .dynamics import completeness

    t = _load_triple(args.input)
    out.write(ser.dumps(completeness(t).to_dict()))
    return EXIT_OK


def cmd_etale(args, out):
    from .dynamics import NonNilpotentExponential, approx_etale, etale_representation

    t = _load_triple(args.input)
    x = _parse_vector(args.x, t.dim)
    if args.approx:
        if args.order is None or args.order < 0:
            raise FormatError("--approx needs --order N with N >= 0")
        q, f, bound = approx_etale(t, x, args.order)
        out.write(ser.dumps({"mode": "approx", "order": args.order,
                             "translation": [repr(float(v)) for v in q],
                             "linear": [[repr(float(v)) for v in row] for row in f],
                             "tail_bound_estimate": repr(bound)}))
        return EXIT_OK
    try:
        el = etale_representation(t, x, args.order)
    except NonNilpotentExponential as exc:
        out.write(ser.dumps({"mode": "exact", "error": "non-nilpotent exponential",
                             "min_poly": _vec(exc.min_poly)}))
        return EXIT_FAIL
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    out.write(ser.dumps({"mode": "exact", "translation": _vec(el.translation),
                         "linear": ser.encode_array(el.linear)}))
    return EXIT_OK


def cmd_central(args, out):
    from .dynamics import central_translations, translation_directions

    t = _load_triple(args.input)
    out.write(ser.dumps({"central_translations": [_vec(v) for v in central_translations(t)],
                         "translation_directions": [_vec(v) for v in translation_directions(t)]}))
    return EXIT_OK


def cmd_catalog(args, out):
    from .catalog import CatalogError, dim2_family, get_entry, paper_suite

    if args.list:
        for e in paper_suite():
            out.write(f"{e.name}\tdim={e.triple.dim}\n")
        return EXIT_OK
    if args.emit:
        try:
            e = get_entry(args.emit)
        except KeyError:
            raise FormatError(f"unknown catalog entry {args.emit!r}") from None
        _emit(ser.triple_to_doc(e.triple), args.out, out)
        return EXIT_OK
    if args.family == "dim2":
        vals = [ser.parse_scalar(v) for v in (args.beta, args.lam, args.mu)]
        try:
            t = dim2_family(*vals)
        except CatalogError as exc:
            raise FormatError(str(exc)) from None
        _emit(ser.triple_to_doc(t), args.out, out)
        return EXIT_OK
    raise FormatError("catalog needs --list, --emit NAME or --family dim2")


def cmd_chu(args, out):
    from .algebra import Algebra
    from .dynamics import chu_connection

    bracket, omega = ser.doc_to_algebra(ser.read_json(args.input))
    if omega is None:
        raise FormatError("chu needs a non-null 'omega'")
    try:
        prod = chu_connection(bracket, omega)
    except ValueError as exc:
        raise _Fail(str(exc)) from None
    _emit(ser.algebra_to_doc(Algebra(prod.product, prod.labels), omega), args.out, out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="fasla", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check the FASLA axioms")
    s.add_argument("--input", required=True)
    s.add_argument("--format", choices=("table", "json"), default="table")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("double-extend", help="build a double extension")
    s.add_argument("--base", required=True)
    s.add_argument("--params", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_double_extend)

    s = sub.add_parser("reduce", help="reduce by a 1-dim bilateral ideal")
    s.add_argument("--input", required=True)
    s.add_argument("--e", type=int, help="basis index spanning the ideal")
    s.add_argument("--d", type=int, help="basis index of the dual vector")
    s.add_argument("--out")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("decompose", help="reduce repeatedly down to dimension 0")
    s.add_argument("--input", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("cotangent", help="build a twisted or classical cotangent")
    s.add_argument("--data")
    s.add_argument("--hess", action="store_true")
    s.add_argument("--base")
    s.add_argument("--out")
    s.set_defaults(func=cmd_cotangent)

    s = sub.add_parser("detect-lagrangian", help="search for a Lagrangian bilateral ideal")
    s.add_argument("--input", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_detect_lagrangian)

    s = sub.add_parser("cohomology", help="dimensions of Z^p, B^p, H^p")
    s.add_argument("--input", required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--module", choices=("trivial", "canonical-dual", "file"), default="trivial")
    s.add_argument("--module-file")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("complete", help="completeness analysis")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_complete)

    s = sub.add_parser("etale", help="etale affine symplectic representation of exp(x)")
    s.add_argument("--input", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--approx", action="store_true")
    s.add_argument("--order", type=int)
    s.set_defaults(func=cmd_etale)

    s = sub.add_parser("central", help="central translation directions")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_central)

    s = sub.add_parser("catalog", help="built-in examples")
    s.add_argument("--list", action="store_true")
    s.add_argument("--emit")
    s.add_argument("--family", choices=("dim2",))
    s.add_argument("--beta", default="0")
    s.add_argument("--lambda", dest="lam", default="0")
    s.add_argument("--mu", default="0")
    s.add_argument("--out")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("chu", help="left-symmetric product of a symplectic Lie algebra")
    s.add_argument("--input", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_chu)
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, stdout)
    except _Fail as exc:
        stdout.write(str(exc) + "\n")
        return EXIT_FAIL
    except FormatError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (ValueError, ZeroDivisionError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
