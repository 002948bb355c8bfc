"""Waring rank computation and bounds.

Exact ranks are available for binary forms (Sylvester's algorithm on the
apolar ideal) and for monomials (closed formula).  Everything else gets the
catalecticant lower bound and an upper bound from an explicit expression.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, Sequence

from . import qlinalg
from .apolarity import apolar_graded_piece, catalecticant_rank, essential_reduction
from .pointgeom import PointSet, ProjPoint, collinear_subsets
from .polyring import Form, LinearForm, contract, monomials, multiply, power
from .qlinalg import Matrix, as_fraction

METHODS = ("sylvester", "monomial", "sac-theorem", "catalecticant-bound", "explicit-decomposition")


class Decomposition:
    """``sum(c_i * L_i ** d)`` with pairwise non-proportional ``L_i``.

    Linear forms are stored normalized (first nonzero coefficient 1); the
    scale is absorbed into the coefficient, and proportional summands merge.
    """

    __slots__ = ("degree", "num_vars", "terms")

    def __init__(self, degree: int, num_vars: int, terms: Iterable[tuple[object, LinearForm | Sequence]] = ()):
        if degree < 1:
            raise ValueError("decomposition degree must be positive")
        merged: dict[tuple[Fraction, ...], Fraction] = {}
        order: list[tuple[Fraction, ...]] = []
        for coef, lin in terms:
            coef = as_fraction(coef)
            lin = lin if isinstance(lin, LinearForm) else LinearForm(lin)
            if lin.num_vars != num_vars:
                raise ValueError("linear form has the wrong number of variables")
            if lin.is_zero():
                raise ValueError("zero linear form in a decomposition")
            lead = next(c for c in lin.coefficients if c)
            key = tuple(c / lead for c in lin.coefficients)
            if key not in merged:
                merged[key] = Fraction(0)
                order.append(key)
            merged[key] += coef * lead ** degree
        self.degree = degree
        self.num_vars = num_vars
        self.terms: tuple[tuple[Fraction, LinearForm], ...] = tuple(
            (merged[k], LinearForm(k)) for k in order if merged[k] != 0
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Decomposition) and (self.degree, self.num_vars, self.terms) == (
            other.degree, other.num_vars, other.terms)

    def points(self) -> PointSet:
        return PointSet(self.num_vars - 1, tuple(ProjPoint(lin.coefficients) for _, lin in self.terms))

    def __add__(self, other: "Decomposition") -> "Decomposition":
        if (self.degree, self.num_vars) != (other.degree, other.num_vars):
            raise ValueError("incompatible decompositions")
        return Decomposition(self.degree, self.num_vars, self.terms + other.terms)

    def __repr__(self) -> str:
        parts = [f"{c}*({lin.as_form().to_text()})^{self.degree}" for c, lin in self.terms]
        return "Decomposition(" + " + ".join(parts) + ")"


def expand(dec: Decomposition) -> Form:
    total = Form(dec.num_vars, dec.degree)
    for c, lin in dec.terms:
        total = total + power(lin, dec.degree) * c
    return total


@dataclass
class RankCertificate:
    lower: int
    upper: int
    method: str
    exact: int | None = None
    decomposition: Decomposition | None = None
    apolar: tuple[Form, ...] = ()
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.exact is None and self.lower == self.upper:
            self.exact = self.lower
        if self.exact is not None and not self.lower == self.exact == self.upper:
            raise ValueError("exact rank must equal both bounds")

    @classmethod
    def exactly(cls, r: int, method: str, **kw) -> "RankCertificate":
        return cls(r, r, method, r, **kw)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None


# -- binary forms -----------------------------------------------------------

def _binary_coeffs(a: Form) -> list[Fraction]:
    """Coefficients ``a_j`` of ``x0^(k-j) x1^j`` for ``j = 0..k``."""
    if a.num_vars != 2:
        raise ValueError("expected a binary form")
    k = a.degree
    return [a.coefficient((k - j, j)) for j in range(k + 1)]


def _split_x1(a: Form) -> tuple[int, list[Fraction]]:
    """Write ``a = x1^e * a'`` and return ``e`` with ``a'(t, 1)`` (highest power first)."""
    coeffs = _binary_coeffs(a)
    e = next(j for j, c in enumerate(coeffs) if c)
    return e, coeffs[e:]


def _trim(p: list[Fraction]) -> list[Fraction]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and any(a):
        f = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= f * b[i]
        a.pop(0)
    return _trim(a) if a else [Fraction(0)]


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(a), _trim(b)
    while any(b):
        a, b = b, _poly_rem(a, b)
    if not any(a):
        return [Fraction(0)]
    return [c / a[0] for c in a]


def binary_gcd(p: Form, q: Form) -> Form:
    """Monic-up-to-scale gcd of two binary forms, treating the root at infinity exactly."""
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    ep, up = _split_x1(p)
    eq, uq = _split_x1(q)
    g = _poly_gcd(up, uq)
    e = min(ep, eq)
    m = len(g) - 1
    terms = {(m - i, i + e): c for i, c in enumerate(g)}
    return Form(2, m + e, terms)


def is_squarefree_binary(a: Form) -> bool:
    """No repeated projective root: ``gcd(a, da/dx0, da/dx1)`` is constant."""
    if a.is_zero():
        raise ValueError("zero form")
    if a.num_vars != 2:
        raise ValueError("expected a binary form")
    if a.degree <= 1:
        return True
    g = binary_gcd(a, contract((1, 0), a))
    g = binary_gcd(g, contract((0, 1), a))
    return g.degree == 0


def binary_rational_roots(a: Form) -> list[tuple[Fraction, Fraction]] | None:
    """All projective roots ``(u, v)`` of ``a`` if ``a`` splits over Q into distinct
    linear factors, else None."""
    import sympy

    e, coeffs = _split_x1(a)
    if e > 1:
        return None
    roots: list[tuple[Fraction, Fraction]] = []
    if e == 1:
        roots.append((Fraction(1), Fraction(0)))
    if len(coeffs) > 1:
        t = sympy.Symbol("t")
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], t, domain="QQ")
        found = poly.ground_roots()
        if any(mult > 1 for mult in found.values()):
            return None
        roots.extend((Fraction(int(r.p), int(r.q)), Fraction(1)) for r in found)
    if len(roots) != a.degree:
        return None
    return roots


def _solve_coefficients(f: Form, lins: Sequence[LinearForm]) -> list[Fraction] | None:
    cols = [power(lin, f.degree).coefficient_vector() for lin in lins]
    m = Matrix.from_rows([list(r) for r in zip(*cols)], len(lins))
    sol = qlinalg.solve(m, f.coefficient_vector())
    return None if sol is None else list(sol)


def _decomposition_from_operator(g: Form, a: Form) -> Decomposition | None:
    roots = binary_rational_roots(a)
    if roots is None:
        return None
    lins = [LinearForm(r) for r in roots]
    coeffs = _solve_coefficients(g, lins)
    if coeffs is None:
        return None
    return Decomposition(g.degree, 2, zip(coeffs, lins))


def _pencil_candidates(piece: Sequence[Form], limit: int = 3):
    yield from piece
    for weights in product(range(-limit, limit + 1), repeat=len(piece)):
        if sum(1 for w in weights if w) >= 2:
            yield sum((p * w for p, w in zip(piece[1:], weights[1:])), piece[0] * weights[0])


def _second_generator(g: Form, a: Form, degree: int) -> Form | None:
    piece = apolar_graded_piece(g, degree)
    multiples = [multiply(a, Form.monomial(m)).coefficient_vector()
                 for m in monomials(2, degree - a.degree)]
    base = qlinalg.rank(multiples)
    for b in piece:
        if qlinalg.rank(multiples + [b.coefficient_vector()]) > base:
            return b
    return None


def _sylvester(g: Form, witness: bool) -> RankCertificate:
    d = g.degree
    for k in range(1, d + 2):
        piece = apolar_graded_piece(g, k) if k <= d else []
        if piece:
            break
    else:  # pragma: no cover - a nonzero binary form always has apolar elements by degree d//2+1
        raise ArithmeticError("no apolar generator found")
    notes = {"generator_degrees": [k, d + 2 - k]}
    if len(piece) >= 2:
        # balanced case: both generators have degree k = (d+2)/2 and rank = k
        chosen = None
        for cand in _pencil_candidates(piece):
            if not cand.is_zero() and is_squarefree_binary(cand):
                chosen = cand
                if not witness or binary_rational_roots(cand) is not None:
                    break
        r = k
        a = chosen if chosen is not None else piece[0]
        apolar = tuple(piece[:2])
        notes["squarefree_generator"] = chosen is not None
    else:
        a = piece[0]
        squarefree = is_squarefree_binary(a)
        r = k if squarefree else d + 2 - k
        notes["squarefree_generator"] = squarefree
        apolar = (a,)
        if not squarefree:
            b = _second_generator(g, a, d + 2 - k)
            if b is not None:
                apolar = (a, b)
    dec = None
    if witness and r == a.degree and is_squarefree_binary(a):
        dec = _decomposition_from_operator(g, a)
    return RankCertificate.exactly(r, "sylvester", decomposition=dec, apolar=apolar, notes=notes)


def _pull_back(dec: Decomposition | None, basis: Matrix, num_vars: int) -> Decomposition | None:
    """Map a decomposition in essential variables z back to x (z_j = row j of basis)."""
    if dec is None:
        return None
    terms = []
    for c, lin in dec.terms:
        coeffs = [sum((lin[j] * basis[j, i] for j in range(basis.rows)), Fraction(0)) for i in range(num_vars)]
        terms.append((c, coeffs))
    return Decomposition(dec.degree, num_vars, terms)


def binary_rank(f: Form, witness: bool = True) -> RankCertificate:
    """Exact Waring rank of a form with at most two essential variables."""
    if f.is_zero():
        raise ValueError("zero form")
    red = essential_reduction(f)
    if red.count > 2:
        raise ValueError(f"form has {red.count} essential variables; Sylvester needs at most 2")
    if red.count == 1:
        c = red.form.coefficient((f.degree,))
        dec = Decomposition(f.degree, 1, [(c, [1])]) if witness else None
        cert = RankCertificate.exactly(1, "sylvester", decomposition=dec,
                                       apolar=(), notes={"generator_degrees": [1, f.degree + 1]})
    else:
        cert = _sylvester(red.form, witness)
    cert.decomposition = _pull_back(cert.decomposition, red.matrix, f.num_vars)
    if cert.decomposition is not None and expand(cert.decomposition) != f:
        raise ArithmeticError("Sylvester witness does not reproduce the form")
    cert.notes["essential_variables"] = red.count
    return cert


# -- monomials and bounds -----------------------------------------------------

def monomial_rank(exponents: Sequence[int]) -> RankCertificate:
    """Rank of ``x0^a0 * ... * xn^an`` (all a_i >= 1): product of (a_i + 1) over all
    but one minimal exponent."""
    exps = [int(a) for a in exponents]
    if not exps:
        raise ValueError("empty monomial")
    if any(a < 1 for a in exps):
        raise ValueError("zero exponents must be dropped before computing a monomial rank")
    skip = exps.index(min(exps))
    r = prod(a + 1 for i, a in enumerate(exps) if i != skip)
    return RankCertificate.exactly(r, "monomial", notes={"exponents": exps})


def catalecticant_lower_bound(f: Form) -> int:
    if f.is_zero():
        raise ValueError("zero form")
    if f.degree == 1:
        return 1
    return max(catalecticant_rank(f, k) for k in range(1, f.degree))


def term_upper_bound(f: Form) -> int:
    """Sum of monomial ranks of the terms of ``f`` (rank is subadditive)."""
    return sum(monomial_rank([e for e in mono if e]).exact for mono in f.terms)


# -- dependence and folding ---------------------------------------------------

def powers_dependence(lins: Sequence[LinearForm | Sequence], d: int) -> tuple[Fraction, ...] | None:
    """A nonzero ``lam`` with ``sum(lam_i * L_i ** d) == 0``, or None."""
    if not lins:
        return None
    cols = [power(lin, d).coefficient_vector() for lin in lins]
    m = Matrix.from_rows([list(r) for r in zip(*cols)], len(lins))
    basis = qlinalg.kernel_basis(m)
    if not basis:
        return None
    return qlinalg.primitive(basis[0])


def fold_collinear(dec: Decomposition) -> Decomposition:
    """Eliminate summands whose powers depend on other summands on a common line.

    Repeats until no line through three or more summand points carries a
    linear relation among their d-th powers.  The expansion is unchanged.
    """
    d = dec.degree
    terms = list(dec.terms)
    while True:
        current = Decomposition(d, dec.num_vars, terms)
        terms = list(current.terms)
        if len(terms) < 3:
            return current
        changed = False
        for line in collinear_subsets(current.points(), min_size=3):
            rel = powers_dependence([terms[i][1] for i in line], d)
            if rel is None:
                continue
            pos = next(p for p, lam in enumerate(rel) if lam)
            j = line[pos]
            cj, lam_j = terms[j][0], rel[pos]
            for p, i in enumerate(line):
                if i != j and rel[p]:
                    ci, lin = terms[i]
                    terms[i] = (ci - cj * rel[p] / lam_j, lin)
            del terms[j]
            changed = True
            break
        if not changed:
            return current
