"""Rank additivity for forms in disjoint variables.

Given ``F`` in the x-variables and ``G`` in the y-variables, decide which
proved case of additivity applies, certify ``rank(F + G)`` when it does,
and cross-check bounds.  Also replays the two-binary-forms configuration
argument on explicit point sets in P^3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import qlinalg
from .apolarity import essential_variable_count, essential_reduction
from .pointgeom import (
    PointSet,
    ProjPoint,
    Verdict,
    check_residue_lemma,
    collinear_subsets,
    h1_deficiency,
    lies_on,
    max_collinear,
    span_dimension,
    span_equations,
    span_intersection,
    spans_are_skew,
)
from .polyring import Form, LinearForm, apply_operator, embed, power
from .waring import (
    Decomposition,
    RankCertificate,
    binary_rank,
    catalecticant_lower_bound,
    expand,
    monomial_rank,
    term_upper_bound,
)

PATHS = ("one-variable", "essential-rank", "binary-binary", "coprime-monomials", "unproved")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SacReport:
    rank_F: RankCertificate
    rank_G: RankCertificate
    path: str
    certified_sum_rank: int | None = None
    applicable_paths: list[str] = field(default_factory=list)
    sum_bounds: tuple[int, int] = (0, 0)
    consistency: list[CheckResult] = field(default_factory=list)
    essential: tuple[int, int, int] = (0, 0, 0)

    def __post_init__(self):
        if (self.certified_sum_rank is None) != (self.path == "unproved"):
            raise ValueError("a certified rank is present exactly when a proved path applies")

    @property
    def consistent(self) -> bool:
        return all(c.passed for c in self.consistency)


def joint_sum(f: Form, g: Form) -> Form:
    """``F + G`` in the joint ring: x-block first, then y-block."""
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    n = f.num_vars + g.num_vars
    return embed(f, 0, n) + embed(g, f.num_vars, n)


def _components(f: Form) -> list[list[int]]:
    """Groups of variables linked by shared monomials."""
    parent = list(range(f.num_vars))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for mono in f.terms:
        used = [i for i, e in enumerate(mono) if e]
        for a in used[1:]:
            parent[find(a)] = find(used[0])
    groups: dict[int, list[int]] = {}
    for i in f.used_variables():
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _restrict_to(f: Form, variables: list[int]) -> Form:
    terms = {}
    for mono, c in f.terms.items():
        if all(mono[i] == 0 for i in range(f.num_vars) if i not in variables):
            terms[tuple(mono[i] for i in variables)] = c
    return Form(len(variables), f.degree, terms)


def rank_certificate(f: Form, witness: bool = True, _depth: int = 0) -> RankCertificate:
    """Best available rank information for ``f``.

    Order: Sylvester (<= 2 essential variables), monomial formula,
    catalecticant lower bound against the term-wise upper bound, and when
    those differ a split into variable-disjoint parts certified by a proved
    additivity case.
    """
    if f.is_zero():
        raise ValueError("zero form")
    n_ess = essential_variable_count(f)
    if n_ess <= 2:
        return binary_rank(f, witness=witness)
    if f.is_monomial():
        (mono,) = f.terms
        return monomial_rank([e for e in mono if e])
    lb = catalecticant_lower_bound(f)
    reduced = essential_reduction(f).form
    ub = min(term_upper_bound(f), term_upper_bound(reduced))
    parts = _components(f)
    if lb < ub and len(parts) >= 2 and _depth < 4:
        first = _restrict_to(f, parts[0])
        rest_vars = [i for p in parts[1:] for i in p]
        rest = _restrict_to(f, rest_vars)
        report = classify_and_certify(first, rest, _depth=_depth + 1, witness=witness)
        if report.certified_sum_rank is not None:
            return RankCertificate.exactly(report.certified_sum_rank, "sac-theorem",
                                           notes={"path": report.path, "components": parts})
        lb = max(lb, report.sum_bounds[0])
        ub = min(ub, report.sum_bounds[1])
    dec = None
    if witness:
        summands = _term_decomposition(f)
        if summands and len(summands) == ub:
            dec = Decomposition(f.degree, f.num_vars, summands)
    return RankCertificate(lb, ub, "catalecticant-bound", decomposition=dec,
                           notes={"essential_variables": n_ess})


def _term_decomposition(f: Form):
    """Pure-power terms of ``f`` as decomposition summands (used when each term is a power)."""
    out = []
    for mono, c in f.terms.items():
        used = [i for i, e in enumerate(mono) if e]
        if len(used) != 1:
            return []
        out.append((c, [int(i == used[0]) for i in range(f.num_vars)]))
    return out


def classify_and_certify(f: Form, g: Form, witness: bool = True, _depth: int = 0) -> SacReport:
    """Certify ``rank(F + G)`` for ``F`` (x-variables) and ``G`` (y-variables).

    Path precedence: one-variable, essential-rank, binary-binary,
    coprime-monomials.  Every applicable path is listed.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("zero form")
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    if f.degree < 2:
        raise ValueError("additivity needs degree at least 2")
    rf = rank_certificate(f, witness=witness, _depth=_depth)
    rg = rank_certificate(g, witness=witness, _depth=_depth)
    nf, ng = essential_variable_count(f), essential_variable_count(g)
    applicable = []
    if nf == 1 or ng == 1:
        applicable.append("one-variable")
    if (rf.is_exact and rf.exact == nf) or (rg.is_exact and rg.exact == ng):
        applicable.append("essential-rank")
    if nf <= 2 and ng <= 2:
        applicable.append("binary-binary")
    if f.is_monomial() and g.is_monomial():
        applicable.append("coprime-monomials")
    both_exact = rf.is_exact and rg.is_exact
    if applicable and both_exact:
        path, certified = applicable[0], rf.exact + rg.exact
    else:
        path, certified = "unproved", None

    fg = joint_sum(f, g)
    lb_f, lb_g = catalecticant_lower_bound(f), catalecticant_lower_bound(g)
    lb_fg = catalecticant_lower_bound(fg)
    n_fg = essential_variable_count(fg)
    checks = [
        CheckResult("catalecticant-bound-additivity", lb_fg == lb_f + lb_g,
                    f"lb(F+G)={lb_fg}, lb(F)+lb(G)={lb_f + lb_g}"),
        CheckResult("essential-variable-additivity", n_fg == nf + ng,
                    f"N(F+G)={n_fg}, N(F)+N(G)={nf + ng}"),
    ]
    if certified is not None:
        checks.append(CheckResult("lower-bound-below-certified", lb_fg <= certified,
                                  f"lb(F+G)={lb_fg} <= {certified}"))
        checks.append(CheckResult("component-bounds-below-certified",
                                  lb_f <= rf.exact and lb_g <= rg.exact,
                                  f"lb(F)={lb_f} <= {rf.exact}, lb(G)={lb_g} <= {rg.exact}"))
    # rf.lower + rg.lower is exactly the conjecture, so it is never used as a bound
    lower, upper = lb_fg, rf.upper + rg.upper
    if certified is not None:
        lower = upper = certified
    return SacReport(rf, rg, path, certified, applicable, (lower, upper), checks, (nf, ng, n_fg))


# -- decompositions of F + G ---------------------------------------------------

def _block_support(lin: LinearForm, x_vars: int) -> str:
    xs = any(lin.coefficients[:x_vars])
    ys = any(lin.coefficients[x_vars:])
    return "x" if xs and not ys else "y" if ys and not xs else "mixed"


@dataclass
class Reduction:
    f: Form
    g: Form
    decomposition: Decomposition
    removed_x: int
    removed_y: int


def reduce_decomposition(f: Form, g: Form, dec: Decomposition) -> Reduction:
    """Move summands living in one block back into ``F`` or ``G``.

    Returns ``F'``, ``G'`` and the decomposition of the mixed summands only,
    with ``expand(D') == F' + G'`` in the joint ring.
    """
    fg = joint_sum(f, g)
    if dec.num_vars != fg.num_vars or dec.degree != fg.degree:
        raise ValueError("decomposition does not live in the joint ring")
    if expand(dec) != fg:
        raise ValueError("decomposition does not expand to F + G")
    nx, ny = f.num_vars, g.num_vars
    f_new, g_new = f, g
    mixed, a, b = [], 0, 0
    for c, lin in dec.terms:
        kind = _block_support(lin, nx)
        if kind == "x":
            f_new = f_new - power(lin.coefficients[:nx], dec.degree) * c
            a += 1
        elif kind == "y":
            g_new = g_new - power(lin.coefficients[nx:], dec.degree) * c
            b += 1
        else:
            mixed.append((c, lin))
    red = Reduction(f_new, g_new, Decomposition(dec.degree, dec.num_vars, mixed), a, b)
    if expand(red.decomposition) != joint_sum(f_new, g_new):
        raise ArithmeticError("reduction broke the expansion identity")
    return red


def project_decomposition(dec: Decomposition, block: str, x_vars: int) -> Decomposition:
    """Zero the other block's coordinates in every summand (projection from the
    other block's subspace); vanishing summands are dropped."""
    if block not in ("x", "y"):
        raise ValueError("block must be 'x' or 'y'")
    terms = []
    for c, lin in dec.terms:
        coeffs = list(lin.coefficients)
        if block == "x":
            coeffs[x_vars:] = [Fraction(0)] * (len(coeffs) - x_vars)
        else:
            coeffs[:x_vars] = [Fraction(0)] * x_vars
        if any(coeffs):
            terms.append((c, coeffs))
    return Decomposition(dec.degree, dec.num_vars, terms)


# -- configuration replay in P^3 ---------------------------------------------------

def _line_through(z: PointSet, indices) -> PointSet:
    return PointSet(z.ambient_dim, tuple(z.points[i] for i in indices))


def check_add2_configuration(zf: PointSet, zg: PointSet, zh: PointSet, d: int) -> Verdict:
    """Replay the separation argument for two binary forms on explicit points.

    Hypotheses mirror what a hypothetical shorter decomposition would force;
    the conclusion is ``h1(Z(F) + Z(G) + Z(H), d) == 0``.
    """
    amb = zh.ambient_dim
    same_space = zf.ambient_dim == zg.ambient_dim == amb == 3
    hyp: dict[str, bool] = {"ambient_P3": same_space}
    if not same_space or not (zf.points and zg.points and zh.points):
        hyp["nonempty"] = False
        return Verdict("add2", hyp)
    rf_eqs, rg_eqs = span_equations(zf), span_equations(zg)
    hyp["zf_spans_line"] = span_dimension(zf) == 1
    hyp["zg_spans_line"] = span_dimension(zg) == 1
    hyp["lines_skew"] = spans_are_skew(zf, zg)
    hyp["zf_size_3_to_d"] = 3 <= len(zf) <= d
    hyp["zg_size_3_to_d_minus_1"] = 3 <= len(zg) <= d - 1
    hyp["zh_off_both_lines"] = not any(lies_on(p, rf_eqs) or lies_on(p, rg_eqs) for p in zh)
    hyp["zh_size_at_most_2d_minus_2"] = len(zh) <= 2 * d - 2
    hyp["zh_spans_P3"] = span_dimension(zh) == 3
    lines = collinear_subsets(zh, min_size=2) if len(zh) >= 2 else []
    top = max((len(l) for l in lines), default=len(zh))
    hyp["at_most_d_collinear_in_zh"] = top <= d
    rich = [l for l in lines if len(l) >= d]
    hyp["no_d_line_meets_RG"] = all(
        not span_intersection(_line_through(zh, l), zg) for l in rich
    )
    v = Verdict("add2", hyp, details={"d": d, "zf": len(zf), "zg": len(zg), "zh": len(zh),
                                     "max_collinear_zh": top})
    if not v.hypotheses_met:
        return v

    z = zf.union(zg, zh)
    h1 = {}
    if top < d:
        v.details["case"] = 1
        # no d-point line: the few points of Z(H) separate in degree d-2
        h1["zh@d-2"] = h1_deficiency(zh, d - 2)
        s1 = Verdict("celine-contrapositive",
                     {"spans_at_least_P3": span_dimension(zh) >= 3,
                      "size_at_most_2d_minus_2": len(zh) <= 2 * d - 2,
                      "no_line_with_d_points": top < d},
                     conclusion=h1["zh@d-2"] == 0, details={"u": d, "h1": h1["zh@d-2"]})
        s2 = check_residue_lemma(zg, zh, rg_eqs, d - 1)
        w2 = zh.union(zg)
        h1["zh+zg@d-1"] = h1_deficiency(w2, d - 1)
        s3 = check_residue_lemma(zf, w2, rf_eqs, d)
        v.steps = [s1, s2, s3]
    else:
        v.details["case"] = 2
        line_idx = rich[0]
        on_r = _line_through(zh, line_idx)
        phi = span_intersection(on_r, zf)
        phi_pts = PointSet(amb, tuple(phi))
        z1 = zh.minus(on_r.points)                      # Z'
        z2 = on_r.union(phi_pts)                        # Z''
        zf_rest = zf.minus(phi_pts.points)
        r_eqs = span_equations(on_r)
        v.details.update(line_points=len(on_r), phi_on_RF=bool(phi),
                         phi_in_zf=bool(phi) and phi[0] in zf, z_prime=len(z1), z_second=len(z2))
        h1["z'@d-3"] = h1_deficiency(z1, d - 3)
        s0 = Verdict("few-points", {"z_prime_at_most_d_minus_2": len(z1) <= d - 2},
                     conclusion=h1["z'@d-3"] == 0, details={"h1": h1["z'@d-3"]})
        s1 = check_residue_lemma(zg, z1, rg_eqs, d - 2)
        w = z1.union(zg)
        h1["z'+zg@d-2"] = h1_deficiency(w, d - 2)
        s2 = check_residue_lemma(zf_rest, w, rf_eqs, d - 1)
        w = w.union(zf_rest)
        h1["z'+zg+zf@d-1"] = h1_deficiency(w, d - 1)
        s3 = check_residue_lemma(z2, w, r_eqs, d)
        h1["all@d"] = h1_deficiency(w.union(z2), d)
        v.steps = [s0, s1, s2, s3]
    h1["Z@d"] = h1_deficiency(z, d)
    v.details["h1"] = h1
    v.details["chain_hypotheses_met"] = all(s.hypotheses_met for s in v.steps)
    v.conclusion = h1["Z@d"] == 0
    return v


# -- instance generation ----------------------------------------------------------

def _random_binary_points(rng: random.Random, count: int, bound: int = 9) -> list[tuple[int, int]]:
    pts: list[tuple[int, int]] = []
    seen = set()
    while len(pts) < count:
        u, v = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if (u, v) == (0, 0):
            continue
        key = ProjPoint((u, v))
        if key in seen:
            continue
        seen.add(key)
        pts.append((u, v))
    return pts


def _nonzero(rng: random.Random, bound: int = 5) -> int:
    return rng.choice([i for i in range(-bound, bound + 1) if i])


def _monomial_rank_d(rng: random.Random, d: int) -> tuple[Form, Decomposition]:
    """x0 * x1^(d-1) with a rational decomposition into d powers."""
    while True:
        ts = rng.sample(range(-3 * d, 3 * d + 1), d - 1)
        last = -sum(ts)
        if last not in ts:
            ts.append(last)
            break
    f = Form.monomial((1, d - 1))
    # apolar forms vanishing at the points (1, t) lie in (D0^2, D1^d) iff sum(t) == 0
    lins = [LinearForm((1, t)) for t in ts]
    cols = [power(l, d).coefficient_vector() for l in lins]
    m = qlinalg.Matrix.from_rows([list(r) for r in zip(*cols)], d)
    coeffs = qlinalg.solve(m, f.coefficient_vector())
    return f, Decomposition(d, 2, zip(coeffs, lins))


def _high_rank_binary(rng: random.Random, d: int, r: int) -> tuple[Form, Decomposition]:
    """Binary form whose apolar ideal is (l^k, P) with k = d + 2 - r and P squarefree
    of degree r with rational roots; its rank is r and the roots of P give a witness."""
    k = d + 2 - r
    while True:
        a, b = _random_binary_points(rng, 1, bound=4)[0]
        op = power((a, b), k)                             # pure-power operator l^k
        pts = _random_binary_points(rng, r)
        lins = [LinearForm(p) for p in pts]
        # c with op(sum c_i L_i^d) = 0: kernel of the columns op(L_i^d)
        cols = [apply_operator(op, power(l, d)).coefficient_vector() for l in lins]
        m = qlinalg.Matrix.from_rows([list(row) for row in zip(*cols)], r)
        kernel = qlinalg.kernel_basis(m)
        if len(kernel) != 1 or not all(kernel[0]):
            continue
        dec = Decomposition(d, 2, zip(kernel[0], lins))
        if len(dec) == r:
            return expand(dec), dec


def random_binary_of_rank(rng: random.Random, d: int, r: int) -> tuple[Form, Decomposition]:
    if not 1 <= r <= d:
        raise ValueError(f"rank {r} is not achievable for binary forms of degree {d}")
    for _ in range(200):
        if r == d and d >= 2:
            f, dec = _monomial_rank_d(rng, d)
        elif r <= (d + 2) // 2:
            pts = _random_binary_points(rng, r)
            dec = Decomposition(d, 2, [(_nonzero(rng), p) for p in pts])
            f = expand(dec)
        else:
            f, dec = _high_rank_binary(rng, d, r)
        if len(dec) == r and binary_rank(f, witness=False).exact == r:
            return f, dec
    raise RuntimeError(f"failed to generate a rank-{r} binary form of degree {d}")


@dataclass
class Instance:
    degree: int
    f: Form
    g: Form
    witness_f: Decomposition
    witness_g: Decomposition
    seed: int

    def joint_witness(self) -> Decomposition:
        nx, ny = self.f.num_vars, self.g.num_vars
        n = nx + ny
        terms = [(c, list(l.coefficients) + [0] * ny) for c, l in self.witness_f.terms]
        terms += [(c, [0] * nx + list(l.coefficients)) for c, l in self.witness_g.terms]
        return Decomposition(self.degree, n, terms)


def random_instance(d: int, r: int, s: int, seed: int) -> Instance:
    """Binary ``F`` of rank ``r`` and binary ``G`` of rank ``s`` with witnesses."""
    if d < 1:
        raise ValueError("degree must be positive")
    rng = random.Random(f"instance:{d}:{r}:{s}:{seed}")
    f, wf = random_binary_of_rank(rng, d, r)
    g, wg = random_binary_of_rank(rng, d, s)
    return Instance(d, f, g, wf, wg, seed)
