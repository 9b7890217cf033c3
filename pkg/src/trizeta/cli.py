"""Command-line front end: ``trizeta <command> CURVE [options]``.

Every command prints one JSON object (``scan`` prints one per line).
Exit codes: 0 ok, 1 usage or parse error, 2 domain error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import gf, zeta
from .curve import case_matrix, classify, coeff_text, genus, is_abs_irreducible, parse_trinomial
from .errors import CapExceeded, DomainError, ParseError, TrizetaError
from .maximality import (covering_degree, homogeneous_matrix, maximal_extension_degrees,
                         maximal_over_square, minimal_negative_exponent, scan)
from .polygon import interior_points, interior_points_brute, i_of_curve

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_curve(arg: str):
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            arg = fh.read().strip()
    if arg.lstrip().startswith("{"):
        try:
            return parse_trinomial(json.loads(arg))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON record: {exc}") from exc
    return parse_trinomial(arg)


def _case_summary(cf) -> dict:
    A, _, moduli = case_matrix(cf)
    F = cf.field
    return {
        "normal_form": str(cf.normalized()),
        "case": cf.case_id,
        "params": cf.named_params(),
        "k1": coeff_text(F, cf.k1),
        "k2": coeff_text(F, cf.k2),
        "matrix": [list(r) for r in A],
        "twist": {"xi1": cf.twist_labels[0], "xi2": cf.twist_labels[1]},
        "exclusion_moduli": list(moduli),
        "transform": cf.transform.describe() if cf.transform else None,
    }


def cmd_classify(args) -> dict:
    t = _read_curve(args.curve)
    ok, reason = is_abs_irreducible(t)
    if not ok:
        raise DomainError(reason)
    cf = classify(t)
    out = {"curve": str(t)}
    out.update(_case_summary(cf))
    out["i_C"] = i_of_curve(cf)
    return out


def cmd_irreducible(args) -> dict:
    t = _read_curve(args.curve)
    ok, reason = is_abs_irreducible(t)
    return {"curve": str(t), "irreducible": ok, "reason": reason}


def cmd_genus(args) -> dict:
    t = _read_curve(args.curve)
    cf = classify(t)
    out = {"curve": str(t), "case": cf.case_id}
    out.update(genus(cf).to_dict())
    return out


def cmd_newton(args) -> dict:
    t = _read_curve(args.curve)
    P = t.newton_polygon()
    out = {
        "curve": str(t),
        "vertices": [list(v) for v in P.vertices],
        "twice_area": abs(P.twice_area),
        "boundary_points": P.boundary_points,
        "interior_points": interior_points(P),
        "interior_points_enumerated": interior_points_brute(P),
    }
    try:
        cf = classify(t)
        out["case"] = cf.case_id
        out["i_C"] = i_of_curve(cf)
    except DomainError as exc:
        out["classification_error"] = str(exc)
    return out


def _oracle(cf, L, cap) -> dict:
    plane = cf.normalized()
    out = {}
    details = {}
    for v in (1, 2):
        pred = zeta.predicted_affine_count(cf, v)
        brute = zeta.brute_count(plane, v, "affine", cap=cap)
        rec = {"predicted_affine": pred, "brute_affine": brute, "model_from_L": L.model_count(v)}
        agree = pred == brute
        if zeta.is_nondegenerate(plane):
            rec["toric_model"] = zeta.toric_count(plane, v, cap=cap)
            agree = agree and rec["toric_model"] == rec["model_from_L"]
        out[f"v{v}"] = "agree" if agree else "disagree"
        details[f"v{v}"] = rec
    out["details"] = details
    return out


def cmd_zeta(args) -> dict:
    t = _read_curve(args.curve)
    cf = classify(t)
    method = "exact" if args.exact_only else "auto"
    L = zeta.l_polynomial(cf, method=method)
    out = {
        "curve": str(t),
        "case": cf.case_id,
        "genus": L.genus,
        "L": L.coeffs,
        "orbits": L.factored(),
    }
    if args.debug:
        out["debug"] = {
            "max_rounding_error": L.max_rounding_error,
            "factor_C": [repr(f.C) for f in L.factors],
        }
    if args.oracle:
        out["oracle"] = _oracle(cf, L, args.count_cap)
    return out


def cmd_count(args) -> dict:
    t = _read_curve(args.curve)
    mode = "affine" if args.affine else "projective"
    n = zeta.brute_count(t, args.v, mode, cap=args.count_cap)
    return {"curve": str(t), "v": args.v, "field_order": t.q ** args.v, "mode": mode, "count": n}


def cmd_maximal(args) -> dict:
    t = _read_curve(args.curve)
    cf = classify(t)
    verdict = maximal_over_square(cf, confirm=not args.no_counts, count_cap=args.count_cap)
    out = {"curve": str(t), "case": cf.case_id}
    out.update(verdict.to_dict())
    if verdict.genus > 0:
        l = minimal_negative_exponent(verdict.m_C, cf.q)
        out["minimal_negative_exponent"] = l
        if l is not None:
            L = zeta.l_polynomial(cf)
            degs = maximal_extension_degrees(L, args.extension_bound)
            out["maximal_extension_degrees"] = degs
            out["min_maximal_extension"] = degs[0] if degs else None
        else:
            out["maximal_extension_degrees"] = None
            out["min_maximal_extension"] = None
    H = homogeneous_matrix(cf)
    n = covering_degree(H)
    out["covering"] = {"matrix": H, "n": n, "n_divides_q_plus_1": (cf.q + 1) % n == 0}
    return out


def cmd_scan(args):
    with open(args.family, encoding="utf-8") as fh:
        try:
            family = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid family file: {exc}") from exc
    yield from scan(family, extension_bound=args.extension_bound, confirm=args.counts,
                    count_cap=args.count_cap, jobs=args.jobs)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--table-cap", type=int, default=None,
                        help=f"largest field order with log tables (default {gf.TABLE_CAP})")
    common.add_argument("--count-cap", type=int, default=None,
                        help=f"largest number of brute-force evaluations (default {zeta.COUNT_CAP})")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scan")
    common.add_argument("--debug", action="store_true", help="include floating-point diagnostics")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the output")

    parser = _Parser(prog="trizeta", description="Genus, zeta functions and maximality of trinomial curves.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def curve_cmd(name, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("curve", help='e.g. "x*y^3 + x^3 + y over GF(13)", a JSON record, or @file')
        return p

    curve_cmd("classify", "normal form, congruence matrix and interior point count")
    curve_cmd("irreducible", "absolute irreducibility test")
    curve_cmd("genus", "genus with the gcd data behind it")
    curve_cmd("newton", "Newton polygon and lattice point counts")
    p = curve_cmd("zeta", "L-polynomial from Frobenius orbits")
    p.add_argument("--oracle", action="store_true", help="check against brute-force counts for v=1,2")
    p.add_argument("--exact-only", action="store_true", help="refuse factors that need Gauss sums")
    p = curve_cmd("count", "brute-force point count")
    p.add_argument("--v", type=int, default=1, help="extension degree")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--projective", action="store_true", help="count the projective closure (default)")
    grp.add_argument("--affine", action="store_true", help="count affine points only")
    p = curve_cmd("maximal", "maximality verdict over F_{q^2} and higher extensions")
    p.add_argument("--extension-bound", type=int, default=12)
    p.add_argument("--no-counts", action="store_true", help="skip point-count confirmation")
    p = sub.add_parser("scan", help="sweep a family of curves (NDJSON output)", parents=[common])
    p.add_argument("family", help="JSON family description file")
    p.add_argument("--extension-bound", type=int, default=12)
    p.add_argument("--counts", action="store_true", help="attach point counts over F_{q^2}")
    return parser


COMMANDS = {
    "classify": cmd_classify, "irreducible": cmd_irreducible, "genus": cmd_genus,
    "newton": cmd_newton, "zeta": cmd_zeta, "count": cmd_count, "maximal": cmd_maximal,
}


def _emit(obj, out):
    out.write(json.dumps(obj) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _emit({"error": {"type": "UsageError", "message": str(exc)}}, out)
        return EXIT_PARSE
    saved = gf.TABLE_CAP, zeta.COUNT_CAP
    if args.table_cap is not None:
        gf.TABLE_CAP = args.table_cap
    if args.count_cap is not None:
        zeta.COUNT_CAP = args.count_cap
    try:
        return _run(args, out)
    finally:
        gf.TABLE_CAP, zeta.COUNT_CAP = saved


def _run(args, out) -> int:
    start = time.perf_counter()
    try:
        if args.command == "scan":
            for rec in cmd_scan(args):
                _emit(rec, out)
            return EXIT_OK
        result = COMMANDS[args.command](args)
    except ParseError as exc:
        code, exc_ = EXIT_PARSE, exc
    except CapExceeded as exc:
        code, exc_ = EXIT_CAP, exc
    except (DomainError, TrizetaError) as exc:
        code, exc_ = EXIT_DOMAIN, exc
    except OSError as exc:
        code, exc_ = EXIT_PARSE, exc
    else:
        record = {"command": args.command, "result": result}
        if args.timing:
            record["timing_s"] = round(time.perf_counter() - start, 6)
        _emit(record, out)
        return EXIT_OK
    _emit({"command": args.command, "error": {"type": type(exc_).__name__, "message": str(exc_)}}, out)
    return code


def main_entry() -> None:
    sys.exit(main())
