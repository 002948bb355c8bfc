"""JSON encodings.  Rationals travel as strings (``"3"``, ``"-2/7"``)."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .pointgeom import PointSet, ProjPoint, Verdict
from .polyring import Form
from .qlinalg import Matrix, as_fraction
from .sacharness import Instance, SacReport
from .waring import Decomposition, RankCertificate


SCHEMAS = ("pointset", "rank_certificate", "sac_report", "verdict")


def load_schema(name: str) -> dict:
    """JSON schema shipped with the package (``pointset``, ``verdict``, ...)."""
    if name not in SCHEMAS:
        raise ValueError(f"unknown schema {name!r}")
    text = resources.files("waringsac").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def q(x) -> str:
    return str(as_fraction(x))


def default_names(num_vars: int) -> list[str]:
    return [f"x{i}" for i in range(num_vars)]


def form_to_json(f: Form, names: Sequence[str] | None = None) -> dict:
    return {"text": f.to_text(names), "num_vars": f.num_vars, "degree": f.degree}


def decomposition_to_json(dec: Decomposition, names: Sequence[str] | None = None) -> dict:
    names = list(names) if names is not None else default_names(dec.num_vars)
    terms = []
    for c, lin in dec.terms:
        terms.append({
            "coefficient": q(c),
            "linear_form": [q(x) for x in lin.coefficients],
            "text": lin.as_form().to_text(names),
        })
    return {"degree": dec.degree, "num_vars": dec.num_vars, "terms": terms}


def decomposition_from_json(data: dict) -> Decomposition:
    return Decomposition(
        int(data["degree"]),
        int(data["num_vars"]),
        [(Fraction(t["coefficient"]), [Fraction(x) for x in t["linear_form"]]) for t in data["terms"]],
    )


def operator_names(names: Sequence[str]) -> list[str]:
    return [f"d{n}" for n in names]


def certificate_to_json(cert: RankCertificate, names: Sequence[str] | None = None) -> dict:
    out = {
        "lower": cert.lower,
        "upper": cert.upper,
        "exact": cert.exact,
        "method": cert.method,
        "decomposition": None,
        "apolar": [],
        "notes": _jsonable(cert.notes),
    }
    if cert.decomposition is not None:
        nv = cert.decomposition.num_vars
        out["decomposition"] = decomposition_to_json(
            cert.decomposition, names if names is not None and len(names) == nv else None)
    for a in cert.apolar:
        # generators of a reduced form act on the essential variables z0, z1, ...
        if names is not None and len(names) == a.num_vars:
            op_names = operator_names(names)
        else:
            op_names = operator_names([f"z{i}" for i in range(a.num_vars)])
        out["apolar"].append(a.to_text(op_names))
    return out


def report_to_json(report: SacReport, f: Form, g: Form,
                   f_names: Sequence[str] | None = None, g_names: Sequence[str] | None = None) -> dict:
    f_names = list(f_names) if f_names else default_names(f.num_vars)
    g_names = list(g_names) if g_names else [f"y{j}" for j in range(g.num_vars)]
    nf, ng, nfg = report.essential
    return {
        "F": f.to_text(f_names),
        "G": g.to_text(g_names),
        "degree": f.degree,
        "path": report.path,
        "certified_sum_rank": report.certified_sum_rank,
        "applicable_paths": list(report.applicable_paths),
        "sum_bounds": list(report.sum_bounds),
        "essential_variables": {"F": nf, "G": ng, "F+G": nfg},
        "rank_F": certificate_to_json(report.rank_F, f_names),
        "rank_G": certificate_to_json(report.rank_G, g_names),
        "consistency": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.consistency],
    }


def pointset_to_json(z: PointSet) -> dict:
    return {"ambient_dim": z.ambient_dim, "points": [[q(x) for x in p.coords] for p in z.points]}


def pointset_from_json(data: dict) -> PointSet:
    if "ambient_dim" not in data or "points" not in data:
        raise ValueError("point set JSON needs 'ambient_dim' and 'points'")
    dim = int(data["ambient_dim"])
    pts = tuple(ProjPoint(tuple(Fraction(str(x)) for x in p)) for p in data["points"])
    return PointSet(dim, pts)


def verdict_to_json(v: Verdict) -> dict:
    return {
        "lemma": v.lemma,
        "status": v.status,
        "hypotheses_met": v.hypotheses_met,
        "hypotheses": dict(v.hypotheses),
        "conclusion": v.conclusion,
        "details": _jsonable(v.details),
        "steps": [verdict_to_json(s) for s in v.steps],
    }


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[q(x) for x in m.row(i)] for i in range(m.rows)]


def instance_to_json(inst: Instance) -> dict:
    xn = default_names(inst.f.num_vars)
    yn = [f"y{j}" for j in range(inst.g.num_vars)]
    return {
        "degree": inst.degree,
        "seed": inst.seed,
        "F": inst.f.to_text(xn),
        "G": inst.g.to_text(yn),
        "rank_F": len(inst.witness_f),
        "rank_G": len(inst.witness_g),
        "witness_F": decomposition_to_json(inst.witness_f, xn),
        "witness_G": decomposition_to_json(inst.witness_g, yn),
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return q(obj)
    if isinstance(obj, (ProjPoint,)):
        return [q(x) for x in obj.coords]
    return obj
