"""Command-line front end.

Every subcommand prints a JSON document (default) or a short text report.
Exit status: 0 on success, 1 when a violation was found (the offending
record is printed), 2 on parse or precondition errors.

JSON layouts (rationals are always strings such as ``"-3/4"``; the
schemas live in ``waringsac/schemas``):

* rank certificate: ``lower``, ``upper``, ``exact`` (int or null),
  ``method``, ``decomposition`` (``terms`` of ``coefficient`` and
  ``linear_form``), ``apolar`` (operator texts), ``notes``
* point set: ``{"ambient_dim": N, "points": [["1", "2/3", ...], ...]}``
* verdict: ``lemma``, ``status``, ``hypotheses``, ``conclusion``,
  ``details``, ``steps`` (nested verdicts)
* lemma configs: celine ``{"W", "u"}``, resid ``{"W1", "W2", "subspace", "u"}``
  where ``subspace`` is a list of linear equations, skew ``{"ZF", "ZG", "i"}``,
  add2 ``{"ZF", "ZG", "ZH", "d"}``; each point set as above
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, serialize
from .apolarity import apolar_graded_piece, essential_reduction
from .configs import fuzz, summarize
from .parser import ParseError, parse_form
from .pointgeom import (
    check_celine,
    check_residue_lemma,
    check_skew_union,
    first_difference,
    h1_deficiency,
    hilbert_function,
)
from .polyring import Form, LinearForm, monomials, restrict
from .sacharness import check_add2_configuration, classify_and_certify, random_instance, rank_certificate

LEMMAS = ("celine", "resid", "skew", "add2")

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


# -- subcommands ----------------------------------------------------------------

def cmd_rank(args) -> int:
    parsed = parse_form(args.form)
    if parsed.form.is_zero():
        raise UsageError("the zero form has no rank")
    cert = rank_certificate(parsed.form)
    payload = serialize.certificate_to_json(cert, parsed.names)
    payload["form"] = parsed.form.to_text(parsed.names)
    lines = [f"form:   {payload['form']}"]
    if cert.is_exact:
        lines.append(f"rank:   {cert.exact} ({cert.method})")
    else:
        lines.append(f"rank:   between {cert.lower} and {cert.upper} ({cert.method})")
    if payload["decomposition"]:
        summands = [f"{t['coefficient']}*({t['text']})^{cert.decomposition.degree}"
                    for t in payload["decomposition"]["terms"]]
        lines.append("witness: " + " + ".join(summands))
    if payload["apolar"]:
        lines.append("apolar: " + ", ".join(payload["apolar"]))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_apolar(args) -> int:
    parsed = parse_form(args.form)
    f = parsed.form
    if f.is_zero():
        raise UsageError("the zero form has no apolar ideal of interest")
    if not 0 <= args.degree:
        raise UsageError("degree must be non-negative")
    ops = serialize.operator_names(parsed.names)
    if args.degree > f.degree:
        # every operator of degree above d kills F
        basis = [Form(f.num_vars, args.degree, {m: 1}) for m in monomials(f.num_vars, args.degree)]
    elif args.degree == 0:
        basis = []
    else:
        basis = apolar_graded_piece(f, args.degree)
    texts = [b.to_text(ops) for b in basis]
    payload = {"form": f.to_text(parsed.names), "degree": args.degree,
               "dimension": len(texts), "basis": texts}
    text = f"(F^perp)_{args.degree} has dimension {len(texts)}"
    if texts:
        text += "\n" + "\n".join("  " + t for t in texts)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_essential(args) -> int:
    parsed = parse_form(args.form)
    if parsed.form.is_zero():
        raise UsageError("the zero form has no essential variables")
    red = essential_reduction(parsed.form)
    znames = [f"z{i}" for i in range(red.count)]
    payload = {
        "form": parsed.form.to_text(parsed.names),
        "essential_variables": red.count,
        "variables": parsed.names,
        "reduction_matrix": serialize.matrix_to_json(red.matrix),
        "reduced_form": red.form.to_text(znames),
    }
    rows = []
    for i in range(red.matrix.rows):
        lin = LinearForm(red.matrix.row(i)).as_form().to_text(parsed.names)
        rows.append(f"  z{i} = {lin}")
    text = "\n".join([f"essential variables: {red.count}", *rows, f"F = {payload['reduced_form']}"])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    z = serialize.pointset_from_json(_load_json(args.pointset))
    if args.degree < 0:
        raise UsageError("degree must be non-negative")
    ts = list(range(args.degree + 1))
    h = [hilbert_function(z, t) for t in ts]
    dh = [first_difference(z, t) for t in ts]
    h1 = [h1_deficiency(z, t) for t in ts]
    payload = {"points": len(z), "degree": args.degree, "h": h, "Dh": dh, "h1": h1,
               "separated": h1[-1] == 0}
    text = "\n".join([f"|Z| = {len(z)}", "t   h  Dh  h1"]
                     + [f"{t:<3} {a:<2} {b:<3} {c}" for t, a, b, c in zip(ts, h, dh, h1)])
    _emit(args, payload, text)
    return EXIT_OK


def _split_blocks(parsed, label: str):
    """Return the form restricted to its single variable block and that block's prefix."""
    used = parsed.form.used_variables()
    nx = parsed.x_vars
    in_x = any(i < nx for i in used)
    in_y = any(i >= nx for i in used)
    if in_x and in_y:
        raise UsageError(f"{label} mixes x and y variables")
    if parsed.form.is_zero():
        raise UsageError(f"{label} is zero")
    block = "x" if in_x else "y"
    lo, hi = (0, nx) if block == "x" else (nx, parsed.form.num_vars)
    return restrict(parsed.form, lo, hi - lo), block


def cmd_sac_check(args) -> int:
    pf, pg = parse_form(args.F), parse_form(args.G)
    f, bf = _split_blocks(pf, "F")
    g, bg = _split_blocks(pg, "G")
    if bf == bg:
        raise UsageError(f"F and G share the {bf}-block; use x-variables for one and y-variables for the other")
    if f.degree != g.degree:
        raise UsageError(f"degree mismatch: {f.degree} vs {g.degree}")
    if bf == "y":
        f, g = g, f
    report = classify_and_certify(f, g)
    payload = serialize.report_to_json(report, f, g)
    lines = [f"F = {payload['F']}", f"G = {payload['G']}", f"path: {report.path}"]
    if report.certified_sum_rank is not None:
        lines.append(f"certified rank(F+G) = {report.certified_sum_rank}")
    else:
        lo, hi = report.sum_bounds
        lines.append(f"rank(F+G) in [{lo}, {hi}] (no proved case applies)")
    for c in report.consistency:
        lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name} {c.detail}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.consistent else EXIT_VIOLATION


def _verdict_from_config(lemma: str, cfg: dict):
    ps = serialize.pointset_from_json
    try:
        if lemma == "celine":
            return check_celine(ps(cfg["W"]), int(cfg["u"]))
        if lemma == "resid":
            eqs = [[Fraction(str(a)) for a in e] for e in cfg["subspace"]]
            return check_residue_lemma(ps(cfg["W1"]), ps(cfg["W2"]), eqs, int(cfg["u"]))
        if lemma == "skew":
            return check_skew_union(ps(cfg["ZF"]), ps(cfg["ZG"]), int(cfg["i"]))
        return check_add2_configuration(ps(cfg["ZF"]), ps(cfg["ZG"]), ps(cfg["ZH"]), int(cfg["d"]))
    except KeyError as exc:
        raise UsageError(f"{lemma} config is missing key {exc}") from exc


def _verdict_text(v) -> str:
    hyp = ", ".join(f"{k}={'yes' if ok else 'no'}" for k, ok in v.hypotheses.items())
    return f"{v.lemma}: {v.status} ({hyp})"


def cmd_lemma(args) -> int:
    if args.config is not None:
        v = _verdict_from_config(args.lemma, _load_json(args.config))
        _emit(args, serialize.verdict_to_json(v), _verdict_text(v))
        return EXIT_VIOLATION if v.violated else EXIT_OK
    verdicts = fuzz(args.lemma, args.fuzz, args.seed)
    s = summarize(args.lemma, verdicts)
    bad = [v for v in verdicts if v.violated]
    payload = {
        "lemma": args.lemma,
        "seed": args.seed,
        "total": s.total,
        "confirmed": s.confirmed,
        "hypotheses_not_met": s.hypotheses_not_met,
        "violations": s.violations,
        "cases": {str(k): n for k, n in sorted(s.cases.items())},
        "statuses": [v.status for v in verdicts],
        "violating": [serialize.verdict_to_json(v) for v in bad],
    }
    text = (f"{args.lemma} fuzz (seed {args.seed}): {s.total} verdicts, {s.confirmed} confirmed, "
            f"{s.hypotheses_not_met} hypotheses not met, {s.violations} violations")
    if s.cases:
        text += "\ncases: " + ", ".join(f"{k}: {n}" for k, n in sorted(s.cases.items()))
    for v in bad:
        text += "\nVIOLATION " + json.dumps(serialize.verdict_to_json(v))
    _emit(args, payload, text)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_gen(args) -> int:
    s = args.rank_g if args.rank_g is not None else args.rank
    for r in (args.rank, s):
        if not 1 <= r <= args.degree:
            raise UsageError(f"binary forms of degree {args.degree} have rank between 1 and {args.degree}")
    inst = random_instance(args.degree, args.rank, s, args.seed)
    payload = serialize.instance_to_json(inst)
    text = (f"F = {payload['F']}   (rank {payload['rank_F']})\n"
            f"G = {payload['G']}   (rank {payload['rank_G']})")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .acceptance import CRITERIA, run_criterion
    wanted = args.criteria or sorted(CRITERIA)
    results = []
    for n in wanted:
        if n not in CRITERIA:
            raise UsageError(f"unknown criterion {n}")
        results.append(run_criterion(n, scale=args.scale))
    payload = {"scale": args.scale,
               "criteria": [{"id": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                            for r in results]}
    _emit(args, payload, "\n".join(r.line() for r in results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json",
                        help="output format (default: json)")

    p = argparse.ArgumentParser(prog="waringsac", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("rank", parents=[common], help="Waring rank certificate of a form")
    sp.add_argument("form")
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("apolar", parents=[common], help="basis of a graded piece of the apolar ideal")
    sp.add_argument("form")
    sp.add_argument("--degree", "-k", type=int, required=True)
    sp.set_defaults(func=cmd_apolar)

    sp = sub.add_parser("essential", parents=[common], help="essential variables and reduction matrix")
    sp.add_argument("form")
    sp.set_defaults(func=cmd_essential)

    sp = sub.add_parser("hilbert", parents=[common], help="Hilbert function of a point set")
    sp.add_argument("pointset", help="JSON file with ambient_dim and points")
    sp.add_argument("--degree", "-t", type=int, required=True)
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("sac-check", parents=[common], help="certify rank(F+G) for F, G in disjoint variables")
    sp.add_argument("F")
    sp.add_argument("G")
    sp.set_defaults(func=cmd_sac_check)

    sp = sub.add_parser("lemma", parents=[common], help="replay a lemma on a config or a fuzz campaign")
    sp.add_argument("lemma", choices=LEMMAS)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="JSON configuration file")
    src.add_argument("--fuzz", type=int, metavar="N", help="number of seeded configurations")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_lemma)

    sp = sub.add_parser("gen", parents=[common], help="seeded pair of binary forms with known ranks")
    sp.add_argument("--degree", "-d", type=int, required=True)
    sp.add_argument("--rank", "-r", type=int, required=True)
    sp.add_argument("--rank-g", type=int, default=None, help="rank of G (default: same as --rank)")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("reproduce", parents=[common], help="run the acceptance criteria")
    sp.add_argument("criteria", nargs="*", type=int, help="criterion numbers (default: all)")
    sp.add_argument("--scale", type=float, default=1.0,
                    help="fraction of the full sample sizes to run (default: 1.0)")
    sp.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
