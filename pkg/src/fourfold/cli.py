"""Command line front-end.

Exit codes: 0 for a completed computation (and positive verdicts), 1 for
a negative verdict from a classify-style command, 2 for input errors.
Every subcommand prints deterministic text, or a JSON report envelope
under --json.
"""

import argparse
import json
import sys

from fourfold.classify import (
    ManifoldRecord,
    aspherical_equivalent,
    bordism_group,
    classify_aspherical,
    classify_lens_family,
    hopf_check,
    kreck_equivalent,
    lens_times_circle_record,
    squares_mod,
)
from fourfold.complexes import homology_Lambda, homology_Zw
from fourfold.errors import FourfoldError, ParseError
from fourfold.extensions import pi2_extension, pi2_sequence_check
from fourfold.homology import bar_homology_oracle, group_homology
from fourfold.intmat import AbelianInvariants, smith_normal_form
from fourfold.manifolds import LensSpace, linking_form, linking_isometric
from fourfold.serialize import (
    emit_group_spec,
    invariants_to_json,
    parse_char_spec,
    parse_complex,
    parse_group_spec,
    parse_int_matrix,
    parse_record_document,
    report_envelope,
)

__all__ = ["main"]


def _read_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))


def _load_matrix_or_d3(path):
    """A bare integer matrix, or a complex document contributing its
    twisted degree-3 boundary."""
    text = _read_file(path)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        c = parse_complex(text)
        if c.top_degree < 3:
            raise ParseError("complex has no degree-3 boundary")
        return c.d(3).augment(c.w)
    return parse_int_matrix(text)


def _parse_invariants(spec):
    """FREE:TORSION where TORSION is a comma list (may be empty)."""
    parts = str(spec).split(":")
    if len(parts) != 2:
        raise ParseError("invariants spec must look like FREE:a,b,c (torsion may be empty)")
    try:
        free = int(parts[0])
    except ValueError:
        raise ParseError("bad free rank %r" % parts[0])
    torsion = []
    if parts[1]:
        try:
            torsion = [int(x) for x in parts[1].split(",")]
        except ValueError:
            raise ParseError("bad torsion list %r" % parts[1])
    return AbelianInvariants.from_diag(free, torsion)


def _emit(args, command, status, result, text_lines):
    if args.json:
        print(json.dumps(report_envelope(command, status, result), sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _cmd_snf(args):
    m = parse_int_matrix(_read_file(args.file))
    s = smith_normal_form(m)
    result = {
        "diag": list(s.diag),
        "rank": len(s.diag),
        "rows": m.rows,
        "cols": m.cols,
    }
    _emit(
        args,
        "snf",
        "ok",
        result,
        [
            "matrix %d x %d" % (m.rows, m.cols),
            "rank %d" % len(s.diag),
            "invariant factors: %s" % (" ".join(str(d) for d in s.diag) or "(none)"),
        ],
    )
    return 0


def _cmd_homology(args):
    c = parse_complex(_read_file(args.file))
    lines = []
    result = {"coefficients": args.coeff, "degrees": []}
    for i in range(c.top_degree + 1):
        if args.coeff == "zw":
            inv = homology_Zw(c, i)
        else:
            inv, _mod = homology_Lambda(c, i)
        result["degrees"].append(invariants_to_json(inv))
        lines.append("H_%d = %s" % (i, inv))
    _emit(args, "homology", "ok", result, lines)
    return 0


def _cmd_group_homology(args):
    group = parse_group_spec(args.group)
    w = parse_char_spec(args.w, group)
    inv = group_homology(group, w, args.degree) if group.is_finite else None
    if inv is None:
        from fourfold.homology import homology_of_laurent_extension

        base = group.finite_part()
        inv = homology_of_laurent_extension(
            base, w.restrict_finite(), group.laurent_rank, top=max(4, args.degree)
        )[args.degree]
    result = {
        "group": emit_group_spec(group),
        "degree": args.degree,
        "invariants": invariants_to_json(inv),
    }
    lines = ["H_%d(%s) = %s" % (args.degree, group, inv)]
    status = "ok"
    code = 0
    if args.oracle == "bar":
        oracle = bar_homology_oracle(group, w, args.degree)
        agree = oracle == inv
        result["oracle"] = invariants_to_json(oracle)
        result["oracle_agrees"] = agree
        lines.append("bar oracle: %s (%s)" % (oracle, "agrees" if agree else "MISMATCH"))
        if not agree:
            status = "negative"
            code = 1
    _emit(args, "group-homology", status, result, lines)
    return code


def _cmd_lens_classify(args):
    rep = classify_lens_family(args.p, args.q1, args.q2)
    verdict = "EQUIVALENT" if rep.equivalent else "NOT_EQUIVALENT"
    result = {
        "p": args.p,
        "q1": args.q1,
        "q2": args.q2,
        "verdict": verdict,
        "criteria": rep.verdicts,
        "certificates": rep.certificates,
    }
    lines = ["%s  (p=%d, q1=%d, q2=%d)" % (verdict, args.p, args.q1, args.q2)]
    for name in sorted(rep.verdicts):
        cert = rep.certificates[name]
        lines.append("  %s: %s%s" % (name, rep.verdicts[name], "  %s" % cert if cert else ""))
    _emit(args, "lens-classify", "ok" if rep.equivalent else "negative", result, lines)
    return 0 if rep.equivalent else 1


def _cmd_lens_linking(args):
    f1 = linking_form(LensSpace(args.p, args.q1))
    f2 = linking_form(LensSpace(args.p, args.q2))
    iso, u, sign = linking_isometric(f1, f2)
    verdict = "ISOMETRIC" if iso else "NOT_ISOMETRIC"
    result = {
        "p": args.p,
        "q1": args.q1,
        "q2": args.q2,
        "verdict": verdict,
        "certificate": {"unit": u, "sign": sign} if iso else None,
    }
    lines = [verdict + ("" if not iso else "  unit=%d sign=%d" % (u, sign))]
    _emit(args, "lens-linking", "ok" if iso else "negative", result, lines)
    return 0 if iso else 1


def _cmd_em_torsion(args):
    from fourfold.extensions import em_torsion

    mat = _load_matrix_or_d3(args.file)
    inv = em_torsion(mat, args.m)
    result = {"m": args.m, "invariants": invariants_to_json(inv)}
    _emit(args, "em-torsion", "ok", result, ["E_%d = %s" % (args.m, inv)])
    return 0


def _cmd_recover_m(args):
    mat = _load_matrix_or_d3(args.file)
    inv = _parse_invariants(args.invariants)
    cands = classify_aspherical(mat, inv)
    result = {"invariants": invariants_to_json(inv), "candidates": sorted(cands)}
    lines = ["candidates: %s" % (sorted(cands) or "(none)")]
    status = "ok" if cands else "negative"
    _emit(args, "recover-m", status, result, lines)
    return 0 if cands else 1


def _cmd_ext_class(args):
    c = parse_complex(_read_file(args.file))
    cls = pi2_extension(c)
    seq_ok = pi2_sequence_check(c)
    inv = cls.context.ext_invariants()
    result = {
        "ext_invariants": invariants_to_json(inv),
        "class_trivial": cls.is_trivial(),
        "sequence_exact": seq_ok,
    }
    lines = [
        "extension group: %s" % inv,
        "class trivial: %s" % cls.is_trivial(),
        "sequence exact: %s" % seq_ok,
    ]
    _emit(args, "ext-class", "ok" if seq_ok else "negative", result, lines)
    return 0 if seq_ok else 1


def _record_from_file(path):
    group, signs, cls, mults = parse_record_document(_read_file(path))
    if mults is None:
        if len(group.orders) == 1 and group.laurent_rank in (0, 1):
            mults = squares_mod(group.orders[0])
        else:
            mults = (1,)
    w = parse_char_spec(",".join(str(s) for s in signs), group)
    if group.is_finite:
        h4 = group_homology(group, w, 4)
    else:
        _stable, h4 = bordism_group(group, w)
    return ManifoldRecord(
        group=group,
        w_signs=signs,
        class_h4=cls,
        h4=h4,
        aut_multipliers=mults,
    )


def _cmd_classify_kreck(args):
    r1 = _record_from_file(args.a)
    r2 = _record_from_file(args.b)
    eq, cert = kreck_equivalent(r1, r2)
    verdict = "EQUIVALENT" if eq else "NOT_EQUIVALENT"
    result = {"verdict": verdict, "certificate": cert}
    lines = [verdict + ("" if cert is None else "  %s" % cert)]
    _emit(args, "classify-kreck", "ok" if eq else "negative", result, lines)
    return 0 if eq else 1


def _cmd_classify_aspherical(args):
    mat = _load_matrix_or_d3(args.file)
    inv1 = _parse_invariants(args.inv)
    if args.inv2 is None:
        cands = classify_aspherical(mat, inv1)
        result = {"candidates": sorted(cands)}
        status = "ok" if cands else "negative"
        _emit(args, "classify-aspherical", status, result, ["candidates: %s" % sorted(cands)])
        return 0 if cands else 1
    inv2 = _parse_invariants(args.inv2)
    kwargs = {}
    if args.proj is not None:
        kwargs["proj1"] = args.proj
    if args.proj2 is not None:
        kwargs["proj2"] = args.proj2
    same, cert = aspherical_equivalent(mat, inv1, inv2, **kwargs)
    verdict = "EQUIVALENT" if same else "NOT_EQUIVALENT"
    result = {"verdict": verdict, "certificate": cert}
    _emit(
        args,
        "classify-aspherical",
        "ok" if same else "negative",
        result,
        [verdict + "  %s" % cert],
    )
    return 0 if same else 1


def _cmd_bordism(args):
    group = parse_group_spec(args.group)
    w = parse_char_spec(args.w, group)
    stable, h4 = bordism_group(group, w)
    result = {
        "group": emit_group_spec(group),
        "stable": invariants_to_json(stable),
        "h4": invariants_to_json(h4),
    }
    _emit(args, "bordism", "ok", result, ["%s x %s" % (stable, h4)])
    return 0


def _cmd_hopf_check(args):
    c = parse_complex(_read_file(args.file))
    rep = hopf_check(c)
    result = {
        "passed": rep.passed,
        "groups": {k: invariants_to_json(v) for k, v in rep.groups.items()},
        "checks": rep.checks,
        "notes": rep.notes,
    }
    lines = ["passed: %s" % rep.passed]
    for k in sorted(rep.groups):
        lines.append("  %s = %s" % (k, rep.groups[k]))
    for k in sorted(rep.checks):
        lines.append("  check %s: %s" % (k, rep.checks[k]))
    for note in rep.notes:
        lines.append("  note: %s" % note)
    _emit(args, "hopf-check", "ok" if rep.passed else "negative", result, lines)
    return 0 if rep.passed else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="fourfold",
        description="Exact invariants for the stable classification of closed 4-manifolds.",
    )
    ap.add_argument("--json", action="store_true", help="emit a JSON report envelope")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="Smith form of an integer matrix file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_snf)

    p = sub.add_parser("homology", help="homology of a complex document")
    p.add_argument("file")
    p.add_argument("--coeff", choices=("zw", "lambda"), default="zw")
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("group-homology", help="twisted group homology")
    p.add_argument("--group", required=True, help='e.g. "cyclic:5", "product:2,2", "cyclic:3*Z"')
    p.add_argument("--w", default="trivial", help='"trivial" or signs like "-1,1"')
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--oracle", choices=("bar",), default=None)
    p.set_defaults(func=_cmd_group_homology)

    for name in ("lens-classify", "classify-lens"):
        p = sub.add_parser(name, help="all equivalence criteria for a lens pair")
        p.add_argument("p", type=int)
        p.add_argument("q1", type=int)
        p.add_argument("q2", type=int)
        p.set_defaults(func=_cmd_lens_classify)

    p = sub.add_parser("lens-linking", help="linking form comparison")
    p.add_argument("p", type=int)
    p.add_argument("q1", type=int)
    p.add_argument("q2", type=int)
    p.set_defaults(func=_cmd_lens_linking)

    p = sub.add_parser("em-torsion", help="twisted quotient invariants for one m")
    p.add_argument("file", help="integer matrix file, or a complex document (uses d3)")
    p.add_argument("m", type=int)
    p.set_defaults(func=_cmd_em_torsion)

    p = sub.add_parser("recover-m", help="candidate twisting numbers from invariants")
    p.add_argument("file", help="integer matrix file, or a complex document (uses d3)")
    p.add_argument("invariants", help="FREE:TORSION, e.g. 6:3,3,3,3 or 6:")
    p.set_defaults(func=_cmd_recover_m)

    p = sub.add_parser("ext-class", help="second homotopy extension class of a complex")
    p.add_argument("file")
    p.set_defaults(func=_cmd_ext_class)

    p = sub.add_parser("classify-kreck", help="orbit comparison of two records")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_cmd_classify_kreck)

    p = sub.add_parser("classify-aspherical", help="aspherical-route comparison")
    p.add_argument("file", help="integer matrix file, or a complex document (uses d3)")
    p.add_argument("inv", help="observed invariants, FREE:TORSION")
    p.add_argument("--inv2", default=None, help="second observation to compare")
    p.add_argument("--proj", type=int, default=None, help="projectivity flag for the first")
    p.add_argument("--proj2", type=int, default=None, help="projectivity flag for the second")
    p.set_defaults(func=_cmd_classify_aspherical)

    p = sub.add_parser("bordism", help="stable bordism of a 1-type")
    p.add_argument("--group", required=True)
    p.add_argument("--w", default="trivial")
    p.set_defaults(func=_cmd_bordism)

    p = sub.add_parser("hopf-check", help="exact sequence bookkeeping for a 4-complex")
    p.add_argument("file")
    p.set_defaults(func=_cmd_hopf_check)

    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except FourfoldError as exc:
        msg = "error: %s" % exc
        if getattr(args, "json", False):
            print(json.dumps(report_envelope(args.command, "error", {"message": str(exc)}), sort_keys=True))
        else:
            print(msg, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
