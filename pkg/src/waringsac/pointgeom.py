"""Finite reduced point sets in projective space.

Everything reduces to ranks of evaluation matrices: the Hilbert function
``h_Z(t)`` is the rank of the matrix whose rows are the points of ``Z`` and
whose columns are the degree-``t`` monomials evaluated at them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from . import qlinalg
from .polyring import monomials, power
from .qlinalg import as_fraction


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(as_fraction(c) for c in self.coords)
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", tuple(c / lead for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def integer_coords(self) -> tuple[int, ...]:
        den = lcm(*(c.denominator for c in self.coords))
        return tuple(int(c * den) for c in self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def point(*coords) -> ProjPoint:
    if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction)):
        coords = tuple(coords[0])
    return ProjPoint(tuple(coords))


@dataclass(frozen=True)
class PointSet:
    ambient_dim: int
    points: tuple[ProjPoint, ...] = field(default=())

    def __post_init__(self):
        seen = []
        for p in self.points:
            if not isinstance(p, ProjPoint):
                p = ProjPoint(tuple(p))
            if p.dim != self.ambient_dim:
                raise ValueError(f"point {p} is not in P^{self.ambient_dim}")
            if p not in seen:
                seen.append(p)
        object.__setattr__(self, "points", tuple(seen))

    @classmethod
    def of(cls, points: Iterable, ambient_dim: int | None = None) -> "PointSet":
        pts = [p if isinstance(p, ProjPoint) else ProjPoint(tuple(p)) for p in points]
        if ambient_dim is None:
            if not pts:
                raise ValueError("cannot infer the ambient dimension of an empty set")
            ambient_dim = pts[0].dim
        return cls(ambient_dim, tuple(pts))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        if not isinstance(p, ProjPoint):
            p = ProjPoint(tuple(p))
        return p in self.points

    def union(self, *others: "PointSet") -> "PointSet":
        pts = list(self.points)
        for o in others:
            if o.ambient_dim != self.ambient_dim:
                raise ValueError("ambient dimension mismatch")
            pts.extend(o.points)
        return PointSet(self.ambient_dim, tuple(pts))

    def minus(self, other: Iterable[ProjPoint]) -> "PointSet":
        drop = set(other)
        return PointSet(self.ambient_dim, tuple(p for p in self.points if p not in drop))

    def coordinate_rows(self) -> list[tuple[int, ...]]:
        return [p.integer_coords() for p in self.points]


def _evaluation_rows(z: PointSet, t: int) -> list[list[int]]:
    mons = monomials(z.ambient_dim + 1, t)
    rows = []
    for p in z.coordinate_rows():
        row = []
        for m in mons:
            v = 1
            for x, e in zip(p, m):
                if e:
                    v *= x ** e
            row.append(v)
        rows.append(row)
    return rows


@lru_cache(maxsize=65536)
def hilbert_function(z: PointSet, t: int) -> int:
    """Number of conditions ``z`` imposes on degree-``t`` forms."""
    if t < 0:
        raise ValueError("negative degree")
    if not z.points:
        return 0
    if t == 0:
        return 1
    return qlinalg.rank(_evaluation_rows(z, t))


def first_difference(z: PointSet, t: int) -> int:
    prev = hilbert_function(z, t - 1) if t >= 1 else 0
    return hilbert_function(z, t) - prev


def h1_deficiency(z: PointSet, t: int) -> int:
    """``|Z| - h_Z(t)``: zero exactly when Z is separated in degree t."""
    return len(z) - hilbert_function(z, t)


def is_separated(z: PointSet, t: int) -> bool:
    return h1_deficiency(z, t) == 0


def span_dimension(z: PointSet) -> int:
    if not z.points:
        raise ValueError("empty point set spans nothing")
    return qlinalg.rank(z.coordinate_rows()) - 1


def span_equations(z: PointSet) -> list[tuple[Fraction, ...]]:
    """Linear equations cutting out the span of ``z``."""
    if not z.points:
        return [tuple(Fraction(int(i == j)) for j in range(z.ambient_dim + 1))
                for i in range(z.ambient_dim + 1)]
    return qlinalg.kernel_basis(qlinalg.Matrix.from_rows(z.coordinate_rows()))


def lies_on(p: ProjPoint, equations: Sequence[Sequence]) -> bool:
    return all(sum(as_fraction(a) * x for a, x in zip(eq, p.coords)) == 0 for eq in equations)


def is_proper_subspace(equations: Sequence[Sequence]) -> bool:
    return bool(equations) and qlinalg.rank([list(e) for e in equations]) >= 1


def spans_are_skew(a: PointSet, b: PointSet) -> bool:
    """True when the linear spans of ``a`` and ``b`` meet only in zero."""
    ra = qlinalg.rank(a.coordinate_rows())
    rb = qlinalg.rank(b.coordinate_rows())
    return qlinalg.rank(a.coordinate_rows() + b.coordinate_rows()) == ra + rb


def span_intersection(a: PointSet, b: PointSet) -> list[ProjPoint]:
    """Basis (as projective points) of the intersection of the two spans."""
    ra, rb = a.coordinate_rows(), b.coordinate_rows()
    # solve sum(s_i a_i) - sum(u_j b_j) = 0
    cols = [list(v) for v in ra] + [[-x for x in v] for v in rb]
    m = qlinalg.Matrix.from_rows([list(r) for r in zip(*cols)])
    out = []
    seen_rows = []
    for vec in qlinalg.kernel_basis(m):
        coords = [sum(vec[i] * ra[i][c] for i in range(len(ra))) for c in range(a.ambient_dim + 1)]
        if any(coords):
            if qlinalg.rank(seen_rows + [coords]) > len(seen_rows):
                seen_rows.append(coords)
                out.append(ProjPoint(tuple(coords)))
    return out


def collinear_subsets(z: PointSet, min_size: int = 3) -> list[tuple[int, ...]]:
    """Index sets of the maximal collinear subsets with at least ``min_size`` points."""
    pts = z.coordinate_rows()
    n = len(pts)
    found: list[tuple[int, ...]] = []
    covered: set[tuple[int, int]] = set()
    for i, j in combinations(range(n), 2):
        if (i, j) in covered:
            continue
        eqs = qlinalg.kernel_basis(qlinalg.Matrix.from_rows([pts[i], pts[j]]))
        members = tuple(k for k in range(n)
                        if all(sum(a * x for a, x in zip(eq, pts[k])) == 0 for eq in eqs))
        for a, b in combinations(members, 2):
            covered.add((a, b))
        if len(members) >= min_size:
            found.append(members)
    return found


def max_collinear(z: PointSet) -> tuple[int, tuple[ProjPoint, ProjPoint]]:
    """Largest number of points of ``z`` on one line, with a generating pair."""
    if len(z) < 2:
        raise ValueError("need at least two points")
    lines = collinear_subsets(z, min_size=2)
    best = max(lines, key=len)
    return len(best), (z.points[best[0]], z.points[best[1]])


def veronese(p: ProjPoint, d: int) -> ProjPoint:
    """Coefficients of ``L_p ** d`` (multinomial factors included)."""
    return ProjPoint(power(p.coords, d).coefficient_vector())


def veronese_dependent(z: PointSet, d: int) -> bool:
    if not z.points:
        return False
    rows = [veronese(p, d).coords for p in z.points]
    return qlinalg.rank(rows) < len(rows)


@dataclass
class Verdict:
    """Outcome of replaying a lemma on a concrete configuration."""

    lemma: str
    hypotheses: dict[str, bool]
    conclusion: bool | None = None
    details: dict = field(default_factory=dict)
    steps: list["Verdict"] = field(default_factory=list)

    @property
    def hypotheses_met(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def violated(self) -> bool:
        return (self.hypotheses_met and self.conclusion is False) or any(s.violated for s in self.steps)

    @property
    def status(self) -> str:
        if self.violated:
            return "violation"
        if not self.hypotheses_met:
            return "hypotheses-not-met"
        return "confirmed"


def check_celine(w: PointSet, u: int) -> Verdict:
    """Few points failing to separate in degree u-2 force a u-point line."""
    if u < 3:
        raise ValueError("u must be at least 3")
    h1 = h1_deficiency(w, u - 2)
    span = span_dimension(w) if w.points else -1
    hyp = {
        "spans_at_least_P3": span >= 3,
        "size_at_most_2u_minus_2": len(w) <= 2 * u - 2,
        "h1_positive_in_degree_u_minus_2": h1 > 0,
    }
    v = Verdict("celine", hyp, details={"u": u, "w": len(w), "span_dimension": span, "h1": h1})
    if v.hypotheses_met:
        count, pair = max_collinear(w)
        v.conclusion = count >= u
        v.details.update(max_collinear=count, line=[list(map(str, p.coords)) for p in pair])
    return v


def check_residue_lemma(w1: PointSet, w2: PointSet, subspace: Sequence[Sequence], u: int) -> Verdict:
    """Points in a proper subspace plus separated points off it stay separated one degree up."""
    if w1.ambient_dim != w2.ambient_dim:
        raise ValueError("mismatched ambient dimensions")
    eqs = [tuple(as_fraction(a) for a in e) for e in subspace]
    if any(len(e) != w1.ambient_dim + 1 for e in eqs):
        raise ValueError("subspace equations have the wrong length")
    h1_w2 = h1_deficiency(w2, u - 1) if u >= 1 else len(w2)
    hyp = {
        "subspace_proper": is_proper_subspace(eqs),
        "w1_in_subspace": all(lies_on(p, eqs) for p in w1),
        "w2_off_subspace": not any(lies_on(p, eqs) for p in w2),
        "w2_separated_in_degree_u_minus_1": h1_w2 == 0,
        "w1_size_at_most_u_plus_1": len(w1) <= u + 1,
    }
    v = Verdict("resid", hyp, details={"u": u, "w1": len(w1), "w2": len(w2), "h1_w2": h1_w2})
    if v.hypotheses_met:
        h1 = h1_deficiency(w1.union(w2), u)
        v.details["h1_union"] = h1
        v.conclusion = h1 == 0
    return v


def check_skew_union(zf: PointSet, zg: PointSet, i: int) -> Verdict:
    """Separated sets in skew subspaces have a separated union."""
    if zf.ambient_dim != zg.ambient_dim:
        raise ValueError("mismatched ambient dimensions")
    h1f, h1g = h1_deficiency(zf, i), h1_deficiency(zg, i)
    hyp = {
        "degree_positive": i > 0,
        "spans_skew": bool(zf.points) and bool(zg.points) and spans_are_skew(zf, zg),
        "zf_separated": h1f == 0,
        "zg_separated": h1g == 0,
    }
    v = Verdict("skew", hyp, details={"i": i, "h1_zf": h1f, "h1_zg": h1g})
    if v.hypotheses_met:
        h1 = h1_deficiency(zf.union(zg), i)
        v.details["h1_union"] = h1
        v.conclusion = h1 == 0
    return v
