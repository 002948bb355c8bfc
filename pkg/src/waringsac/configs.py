"""Seeded point configurations for lemma replays.

All coordinates are small integers.  Generators only aim at hypotheses;
the checks themselves decide whether the hypotheses actually hold.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import qlinalg
from .pointgeom import (
    PointSet,
    ProjPoint,
    Verdict,
    check_celine,
    check_residue_lemma,
    check_skew_union,
    lies_on,
    span_equations,
)
from .sacharness import check_add2_configuration


def _vec(rng: random.Random, dim: int, bound: int) -> tuple[int, ...]:
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(dim + 1))
        if any(v):
            return v


def general_points(rng: random.Random, dim: int, count: int, bound: int = 20) -> list[ProjPoint]:
    pts: list[ProjPoint] = []
    while len(pts) < count:
        p = ProjPoint(_vec(rng, dim, bound))
        if p not in pts:
            pts.append(p)
    return pts


def points_in_span(rng: random.Random, basis: list[tuple[int, ...]], count: int,
                   bound: int = 4, avoid=()) -> list[ProjPoint]:
    """Distinct points in the projective span of ``basis``."""
    if len(basis) == 1:
        count = min(count, 1)
    pts: list[ProjPoint] = []
    for _ in range(5000):
        if len(pts) == count:
            break
        coeffs = [rng.randint(-bound, bound) for _ in basis]
        v = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(len(basis[0]))]
        if not any(v):
            continue
        p = ProjPoint(tuple(v))
        if p not in pts and p not in avoid:
            pts.append(p)
    return pts


def random_subspace(rng: random.Random, dim: int, sub_dim: int, bound: int = 3) -> list[tuple[int, ...]]:
    while True:
        basis = [_vec(rng, dim, bound) for _ in range(sub_dim + 1)]
        if qlinalg.rank(basis) == sub_dim + 1:
            return basis


def _cluster_set(rng: random.Random, dim: int, total: int, max_cluster: int) -> PointSet:
    """General points mixed with one or two collinear clusters."""
    pts: list[ProjPoint] = []
    clusters = rng.choice([0, 1, 1, 2])
    for _ in range(clusters):
        if len(pts) >= total:
            break
        size = rng.randint(2, max(2, min(max_cluster, total - len(pts))))
        pts += points_in_span(rng, random_subspace(rng, dim, 1), size, avoid=pts)
    if rng.random() < 0.3 and dim >= 3 and len(pts) < total:
        size = rng.randint(3, max(3, total - len(pts)))
        pts += points_in_span(rng, random_subspace(rng, dim, 2), size, avoid=pts)
    while len(pts) < total:
        p = general_points(rng, dim, 1, bound=rng.choice([2, 5, 20]))[0]
        if p not in pts:
            pts.append(p)
    rng.shuffle(pts)
    return PointSet(dim, tuple(pts[:total]))


def random_point_set(rng: random.Random, dim: int | None = None, max_points: int = 10) -> PointSet:
    dim = dim if dim is not None else rng.randint(1, 3)
    total = rng.randint(1, max_points)
    return _cluster_set(rng, dim, total, max_cluster=total)


def celine_config(rng: random.Random) -> tuple[PointSet, int]:
    u = rng.randint(3, 7)
    w = rng.randint(4, 2 * u - 2)
    if rng.random() < 0.5 and w >= u + 1:
        # one rich line (size around u) plus scattered points
        size = rng.randint(u - 1, min(w - 2, 2 * u - 2))
        pts = points_in_span(rng, random_subspace(rng, 3, 1), size)
        rest = _cluster_set(rng, 3, w - len(pts), max_cluster=u - 1)
        return PointSet(3, tuple(pts) + rest.points), u
    return _cluster_set(rng, 3, w, max_cluster=min(w, u + 1)), u


def resid_config(rng: random.Random):
    dim = rng.randint(2, 4)
    u = rng.randint(1, 5)
    sub_dim = rng.randint(0, dim - 1)
    basis = random_subspace(rng, dim, sub_dim)
    r_eqs = span_equations(PointSet(dim, tuple(ProjPoint(b) for b in basis)))
    n1 = rng.randint(1, u + 2)
    w1 = points_in_span(rng, basis, n1)
    n2 = rng.randint(1, 8)
    w2 = []
    while len(w2) < n2:
        p = general_points(rng, dim, 1, bound=rng.choice([3, 20]))[0]
        if (p not in w2 and not lies_on(p, r_eqs)) or rng.random() < 0.02:
            w2.append(p)
    return PointSet(dim, tuple(w1)), PointSet(dim, tuple(w2)), r_eqs, u


def skew_config(rng: random.Random):
    dim = rng.randint(1, 4)
    a = rng.randint(0, dim - 1) if dim > 1 else 0
    b = rng.randint(0, max(0, dim - a - 1))
    basis_f = random_subspace(rng, dim, a)
    basis_g = random_subspace(rng, dim, b)
    zf = PointSet(dim, tuple(points_in_span(rng, basis_f, rng.randint(1, 6))))
    zg = PointSet(dim, tuple(points_in_span(rng, basis_g, rng.randint(1, 6))))
    return zf, zg, rng.randint(1, 5)


_RF = [(1, 0, 0, 0), (0, 1, 0, 0)]
_RG = [(0, 0, 1, 0), (0, 0, 0, 1)]


def _on_line(rng: random.Random, basis, count: int, avoid) -> list[ProjPoint]:
    return points_in_span(rng, basis, count, bound=4, avoid=avoid)


def add2_config(rng: random.Random, case: int | None = None):
    """Points on the two coordinate lines of P^3 plus a candidate Z(H)."""
    d = rng.randint(4, 7)
    case = case if case is not None else rng.choice([1, 2])
    zf = _on_line(rng, _RF, rng.randint(3, d), [])
    zg = _on_line(rng, _RG, rng.randint(3, d - 1), [])
    rf_eqs = span_equations(PointSet(3, tuple(ProjPoint(b) for b in _RF)))
    rg_eqs = span_equations(PointSet(3, tuple(ProjPoint(b) for b in _RG)))

    def off_lines(p: ProjPoint) -> bool:
        return not lies_on(p, rf_eqs) and not lies_on(p, rg_eqs)

    zh: list[ProjPoint] = []
    if case == 2:
        if rng.random() < 0.5:
            # line through a point of R_F (possibly a point of Z(F))
            phi = rng.choice(zf) if rng.random() < 0.5 else _on_line(rng, _RF, 1, zf)[0]
            other = general_points(rng, 3, 1, bound=6)[0]
            basis = [tuple(phi.integer_coords()), tuple(other.integer_coords())]
        else:
            basis = [tuple(p.integer_coords()) for p in general_points(rng, 3, 2, bound=6)]
        candidates = [p for p in points_in_span(rng, basis, 3 * d, bound=5) if off_lines(p)]
        zh = candidates[:d]
    while len(zh) < 2 * d - 2 - rng.randint(0, d - 2 if case == 1 else 0):
        p = general_points(rng, 3, 1, bound=rng.choice([3, 8, 20]))[0]
        if off_lines(p) and p not in zh:
            zh.append(p)
    return PointSet(3, tuple(zf)), PointSet(3, tuple(zg)), PointSet(3, tuple(zh)), d


def fuzz(lemma: str, count: int, seed: int) -> list[Verdict]:
    """Run ``count`` seeded configurations through the named lemma check."""
    verdicts = []
    for i in range(count):
        rng = random.Random(f"{lemma}:{seed}:{i}")
        if lemma == "celine":
            w, u = celine_config(rng)
            v = check_celine(w, u)
        elif lemma == "resid":
            w1, w2, eqs, u = resid_config(rng)
            v = check_residue_lemma(w1, w2, eqs, u)
        elif lemma == "skew":
            zf, zg, deg = skew_config(rng)
            v = check_skew_union(zf, zg, deg)
        elif lemma == "add2":
            zf, zg, zh, d = add2_config(rng)
            v = check_add2_configuration(zf, zg, zh, d)
        else:
            raise ValueError(f"unknown lemma {lemma!r}")
        v.details["config_index"] = i
        verdicts.append(v)
    return verdicts


@dataclass
class FuzzSummary:
    lemma: str
    total: int
    confirmed: int
    hypotheses_not_met: int
    violations: int
    cases: dict[int, int]


def summarize(lemma: str, verdicts: list[Verdict]) -> FuzzSummary:
    cases: dict[int, int] = {}
    for v in verdicts:
        if v.hypotheses_met and "case" in v.details:
            cases[v.details["case"]] = cases.get(v.details["case"], 0) + 1
    return FuzzSummary(
        lemma,
        len(verdicts),
        sum(v.status == "confirmed" for v in verdicts),
        sum(v.status == "hypotheses-not-met" for v in verdicts),
        sum(v.violated for v in verdicts),
        cases,
    )
