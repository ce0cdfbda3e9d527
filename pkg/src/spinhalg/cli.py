"""Command-line front end.

Every subcommand wraps exactly one library operation family and prints
deterministically: identical flags give byte-identical output, so the
outputs are safe to pin in golden files.  Exit codes: 0 success, 2 usage
error (argparse), 1 domain error from the library.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import clifford, ktheory, modules, series, steenrod


def _json_dump(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(", ", ": "))


# --------------------------------------------------------------------------
# subcommand handlers
# --------------------------------------------------------------------------

def _cmd_classify(args) -> str:
    if args.r is not None or args.s is not None:
        if args.n is not None:
            raise ValueError("give either --n or --r/--s, not both")
        desc = clifford.classify_indefinite(args.r or 0, args.s or 0,
                                            quaternionic=args.quaternionic)
    else:
        if args.n is None:
            raise ValueError("one of --n or --r/--s is required")
        desc = clifford.classify(args.n, args.variant)
    if args.format == "json":
        return _json_dump(desc.to_json())
    return str(desc)


def _cmd_dims(args) -> str:
    value = modules.fundamental_dimension(args.n, args.field)
    if args.format == "json":
        return _json_dump({"n": args.n, "field": args.field, "dimension": value})
    return str(value)


def _cmd_ngroup(args) -> str:
    if args.r is not None or args.s is not None:
        idx = modules.BigradedIndex(args.r or 0, args.s or 0, args.field)
        group = modules.ngroup_bigraded(idx)
        key = {"r": idx.r, "s": idx.s}
    else:
        if args.n is None:
            raise ValueError("one of --n or --r/--s is required")
        group = modules.ngroup(args.n, args.field, h=args.h)
        key = {"n": args.n}
    if args.format == "json":
        return _json_dump({**key, "field": args.field, "group": str(group)})
    return str(group)


def _cmd_genus(args) -> str:
    value = series.genus_4manifold(args.sig, args.euler, args.orientation)
    if args.format == "json":
        return _json_dump({"signature": args.sig, "euler": args.euler,
                           "orientation": args.orientation, "genus": str(value)})
    return str(value)


def _cmd_hp_table(args) -> str:
    matrix = series.hp_pairing_matrix(args.max_i, args.max_j, args.method,
                                      trunc=args.trunc)
    if args.format == "json":
        return _json_dump({"max_i": args.max_i, "max_j": args.max_j,
                           "method": args.method, "rows": "bundle index i",
                           "cols": "projective index j", "matrix": matrix})
    sep = "\t" if args.format == "tsv" else " "
    return "\n".join(sep.join(str(v) for v in row) for row in matrix)


def _cmd_steenrod_sq(args) -> str:
    ring = steenrod.StiefelWhitneyRing()
    poly = steenrod.parse_polynomial(ring, args.poly)
    result = steenrod.sq(args.k, poly)
    if args.format == "json":
        return _json_dump({"k": args.k, "input": str(poly), "result": str(result)})
    return str(result)


def _cmd_steenrod_wu(args) -> str:
    ring = steenrod.StiefelWhitneyRing()
    nu = steenrod.wu_classes(ring, args.max_degree)
    if args.format == "json":
        return _json_dump({"max_degree": args.max_degree,
                           "classes": [str(p) for p in nu]})
    return "\n".join(f"v{k} = {p}" for k, p in enumerate(nu))


def _cmd_steenrod_verify(args) -> str:
    model = steenrod.bso_quotient_model("spinh", args.max_degree)
    quotient = model.poincare_series()
    free = model.free_series()
    homology = steenrod.sq1_homology_series(args.max_degree, model)
    oracle = steenrod.sq1_homology_oracle(args.max_degree)
    ring = model.ideal.ring
    w9 = ring.w(9) + ring.w(2) * ring.w(7) + ring.w(3) * ring.w(6)
    w9_member = args.max_degree >= 9 and steenrod.ideal_membership(w9, model.ideal).member
    payload = {
        "max_degree": args.max_degree,
        "quotient_series": quotient,
        "free_subalgebra_series": free,
        "series_match": quotient == free,
        "sq1_homology": homology,
        "sq1_oracle": oracle,
        "sq1_match": homology == oracle,
        "w9_decomposable": w9_member,
    }
    if args.format == "json":
        return _json_dump(payload)
    lines = [
        f"quotient series      {' '.join(map(str, quotient))}",
        f"free subalgebra      {' '.join(map(str, free))}",
        f"series match         {payload['series_match']}",
        f"sq1 homology         {' '.join(map(str, homology))}",
        f"sq1 oracle           {' '.join(map(str, oracle))}",
        f"sq1 match            {payload['sq1_match']}",
        f"w9 decomposable      {payload['w9_decomposable']}",
    ]
    return "\n".join(lines)


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    if not hi:
        value = int(lo)
        return value, value
    return int(lo), int(hi)


def _cmd_ktable(args) -> str:
    ring = ktheory.CoefficientRing.parse(args.coeff)
    lo, hi = _parse_range(args.range)
    entries = []
    for n in range(lo, hi + 1):
        result = ktheory.k_coefficients_extension(args.theory, n, ring)
        entries.append({"n": n, "group": str(result)})
    if args.format == "json":
        return _json_dump({"theory": args.theory, "coeff": str(ring),
                           "entries": entries})
    sep = "\t" if args.format == "tsv" else ": "
    return "\n".join(f"{e['n']}{sep}{e['group']}" for e in entries)


def _cmd_zk_index(args) -> str:
    data = ktheory.ZkIndexInput(args.n, args.k, Fraction(args.integral),
                                Fraction(args.eta))
    residue = ktheory.zk_index(data)
    if args.format == "json":
        return _json_dump({"n": args.n, "k": args.k,
                           "integral": str(data.integral_term),
                           "eta": str(data.eta_term),
                           "epsilon": data.epsilon,
                           "residue": residue, "modulus": args.k})
    return f"{residue} (mod {args.k})"


def _cmd_dual(args) -> str:
    orders = [int(x) for x in args.torsion.split(",") if x] if args.torsion else []
    group = ktheory.FGAbelianGroup.from_summands(args.rank, orders)
    report = ktheory.dual_group(group)
    if args.format == "json":
        return _json_dump({"group": str(group), "dual": str(report.group),
                           "verified": report.verified,
                           "candidates": report.torsion_candidates,
                           "valid": report.torsion_valid})
    status = "verified" if report.verified else "FAILED"
    return f"{group} -> {report.group} [{status}]"


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _add_format(parser, *, tsv=False):
    choices = ["text", "json"] + (["tsv"] if tsv else [])
    parser.add_argument("--format", choices=choices, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinhalg",
        description="Exact Clifford/characteristic-class/Steenrod/K-theory computations")
    parser.add_argument("--trunc", type=int, default=None,
                        help="override series truncation where applicable")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="matrix normal form of a Clifford-type algebra")
    p.add_argument("--n", type=int)
    p.add_argument("--variant", choices=list(clifford.VARIANTS), default="Cl")
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--quaternionic", action="store_true")
    _add_format(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("dims", help="fundamental graded module dimension")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", choices=["R", "C", "H"], required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_dims)

    p = sub.add_parser("ngroup", help="graded module Grothendieck group")
    p.add_argument("--n", type=int)
    p.add_argument("--field", choices=["R", "C", "H"], required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--h", action="store_true",
                   help="complex modules over the quaternionified algebra")
    _add_format(p)
    p.set_defaults(handler=_cmd_ngroup)

    p = sub.add_parser("genus", help="twisted genus of an oriented 4-manifold")
    p.add_argument("--sig", type=int, required=True)
    p.add_argument("--euler", type=int, required=True)
    p.add_argument("--orientation", choices=["+", "-"], required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_genus)

    p = sub.add_parser("hp-table", help="projective-space pairing matrix")
    p.add_argument("--max-i", type=int, required=True, dest="max_i")
    p.add_argument("--max-j", type=int, required=True, dest="max_j")
    p.add_argument("--method", choices=["binomial", "residue", "chebyshev"],
                   default="binomial")
    _add_format(p, tsv=True)
    p.set_defaults(handler=_cmd_hp_table)

    p = sub.add_parser("steenrod", help="mod-2 Steenrod operations")
    ssub = p.add_subparsers(dest="subcommand", required=True)

    q = ssub.add_parser("sq", help="apply a Steenrod square to a polynomial")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--poly", type=str, required=True)
    _add_format(q)
    q.set_defaults(handler=_cmd_steenrod_sq)

    q = ssub.add_parser("wu", help="Wu classes of the oriented universal bundle")
    q.add_argument("--max-degree", type=int, required=True, dest="max_degree")
    _add_format(q)
    q.set_defaults(handler=_cmd_steenrod_wu)

    q = ssub.add_parser("verify-bspinh", help="quotient-presentation verification")
    q.add_argument("--max-degree", type=int, required=True, dest="max_degree")
    _add_format(q)
    q.set_defaults(handler=_cmd_steenrod_verify)

    p = sub.add_parser("ktable", help="K-theory coefficient groups")
    p.add_argument("--theory", choices=["KO", "KU", "KSp"], required=True)
    p.add_argument("--coeff", type=str, default="Z")
    p.add_argument("--range", type=str, required=True,
                   help="degree range, e.g. 0..16")
    _add_format(p, tsv=True)
    p.set_defaults(handler=_cmd_ktable)

    p = sub.add_parser("zk-index", help="mod-k index arithmetic")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--integral", type=str, required=True,
                   help="exact rational, e.g. 6 or 9/2 (use --integral=-3/2 for negatives)")
    p.add_argument("--eta", type=str, default="0",
                   help="exact rational (use --eta=-5/2 form for negatives)")
    _add_format(p)
    p.set_defaults(handler=_cmd_zk_index)

    p = sub.add_parser("dual", help="double dual of a finitely generated abelian group")
    p.add_argument("--rank", type=int, default=0)
    p.add_argument("--torsion", type=str, default="",
                   help="comma-separated cyclic orders, e.g. 4,6")
    _add_format(p)
    p.set_defaults(handler=_cmd_dual)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        output = args.handler(args)
    except (ValueError, ArithmeticError) as exc:
        category = type(exc).__name__
        print(f"error[{category}]: {exc}", file=sys.stderr)
        return 1
    print(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
