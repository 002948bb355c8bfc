"""Homogeneous forms over the rationals.

A monomial is a tuple of exponents, one per variable.  Forms keep only
nonzero coefficients and every stored monomial has the form's degree.
Differential operators are represented by the same :class:`Form` type and
act through :func:`apply_operator` / :func:`contract` (true partial
derivatives, factorials included).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Mapping, Sequence

from .qlinalg import Matrix, as_fraction

Monomial = tuple[int, ...]
DualMonomial = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(num_vars: int, degree: int) -> tuple[Monomial, ...]:
    """All monomials of ``degree`` in ``num_vars`` variables, graded-lex descending.

    ``monomials(2, 2) == ((2, 0), (1, 1), (0, 2))``, i.e. x0^2, x0*x1, x1^2.
    """
    if degree < 0:
        return ()
    if num_vars == 0:
        return ((),) if degree == 0 else ()
    if num_vars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(num_vars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials(num_vars, degree))}


def multinomial(exponents: Sequence[int]) -> int:
    return factorial(sum(exponents)) // prod(factorial(e) for e in exponents)


class Form:
    """A homogeneous polynomial with rational coefficients."""

    __slots__ = ("num_vars", "degree", "_terms", "_hash")

    def __init__(self, num_vars: int, degree: int, terms: Mapping[Monomial, object] | None = None):
        if num_vars < 1:
            raise ValueError("a form needs at least one variable")
        if degree < 0:
            raise ValueError("negative degree")
        clean: dict[Monomial, Fraction] = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != num_vars:
                raise ValueError(f"monomial {mono} does not have {num_vars} exponents")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            if sum(mono) != degree:
                raise ValueError(f"monomial {mono} is not of degree {degree}")
            c = as_fraction(coef)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self.num_vars = num_vars
        self.degree = degree
        self._terms = clean
        self._hash = None

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def items(self):
        """Terms in graded-lex descending order."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.num_vars, self.degree, self._terms) == (other.num_vars, other.degree, other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_vars, self.degree, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other: "Form") -> "Form":
        return add(self, other)

    def __sub__(self, other: "Form") -> "Form":
        return add(self, scale(other, -1))

    def __neg__(self) -> "Form":
        return scale(self, -1)

    def __mul__(self, c) -> "Form":
        if isinstance(c, Form):
            return multiply(self, c)
        return scale(self, c)

    __rmul__ = __mul__

    def coefficient_vector(self) -> tuple[Fraction, ...]:
        return tuple(self.coefficient(m) for m in monomials(self.num_vars, self.degree))

    @classmethod
    def from_vector(cls, num_vars: int, degree: int, vector: Sequence) -> "Form":
        mons = monomials(num_vars, degree)
        if len(vector) != len(mons):
            raise ValueError("coefficient vector has the wrong length")
        return cls(num_vars, degree, dict(zip(mons, vector)))

    @classmethod
    def monomial(cls, exponents: Sequence[int], coefficient=1) -> "Form":
        exponents = tuple(exponents)
        return cls(len(exponents), sum(exponents), {exponents: coefficient})

    def used_variables(self) -> list[int]:
        return sorted({i for m in self._terms for i, e in enumerate(m) if e})

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def to_text(self, names: Sequence[str] | None = None) -> str:
        return to_text(self, names)

    def __repr__(self) -> str:
        return f"Form({self.to_text()!r}, num_vars={self.num_vars}, degree={self.degree})"

    def __str__(self) -> str:
        return self.to_text()


class LinearForm:
    """Coefficient vector of a linear form ``sum(c_i * x_i)``."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable):
        self.coefficients = tuple(as_fraction(c) for c in coefficients)
        if not self.coefficients:
            raise ValueError("linear form needs at least one variable")

    @property
    def num_vars(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearForm) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i]

    def as_form(self) -> Form:
        return Form(self.num_vars, 1, {tuple(int(i == j) for j in range(self.num_vars)): c
                                      for i, c in enumerate(self.coefficients)})

    def __repr__(self) -> str:
        return f"LinearForm({self.as_form().to_text() or '0'})"


def power(linear: LinearForm | Sequence, d: int) -> Form:
    """Multinomial expansion of ``linear ** d``."""
    if not isinstance(linear, LinearForm):
        linear = LinearForm(linear)
    if d < 1:
        raise ValueError("power degree must be at least 1")
    if linear.is_zero():
        raise ValueError("zero linear form is a degenerate summand")
    coeffs = linear.coefficients
    support = [i for i, c in enumerate(coeffs) if c]
    terms: dict[Monomial, Fraction] = {}
    n = len(coeffs)
    for sub in monomials(len(support), d):
        mono = [0] * n
        value = Fraction(multinomial(sub))
        for i, e in zip(support, sub):
            mono[i] = e
            if e:
                value *= coeffs[i] ** e
        terms[tuple(mono)] = value
    return Form(n, d, terms)


def _check_compatible(f1: Form, f2: Form) -> None:
    if f1.num_vars != f2.num_vars:
        raise ValueError(f"variable count mismatch: {f1.num_vars} vs {f2.num_vars}")
    if f1.degree != f2.degree:
        raise ValueError(f"degree mismatch: {f1.degree} vs {f2.degree}")


def add(f1: Form, f2: Form) -> Form:
    _check_compatible(f1, f2)
    terms = dict(f1._terms)
    for m, c in f2._terms.items():
        terms[m] = terms.get(m, Fraction(0)) + c
    return Form(f1.num_vars, f1.degree, terms)


def scale(f: Form, c) -> Form:
    c = as_fraction(c)
    return Form(f.num_vars, f.degree, {m: c * v for m, v in f._terms.items()})


def multiply(f1: Form, f2: Form) -> Form:
    if f1.num_vars != f2.num_vars:
        raise ValueError("variable count mismatch")
    terms: dict[Monomial, Fraction] = {}
    for m1, c1 in f1._terms.items():
        for m2, c2 in f2._terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            terms[m] = terms.get(m, Fraction(0)) + c1 * c2
    return Form(f1.num_vars, f1.degree + f2.degree, terms)


def zero(num_vars: int, degree: int) -> Form:
    return Form(num_vars, degree)


def substitute(f: Form, a: Matrix | Sequence[Sequence]) -> Form:
    """Replace old variable ``i`` by ``sum_j a[i][j] * z_j``.

    ``a`` has one row per variable of ``f``; its column count is the number
    of new variables.  ``substitute(substitute(f, A), B) == substitute(f, A @ B)``.
    """
    if not isinstance(a, Matrix):
        a = Matrix.from_rows(a)
    if a.rows != f.num_vars:
        raise ValueError(f"substitution has {a.rows} rows, form has {f.num_vars} variables")
    if a.cols < 1:
        raise ValueError("substitution needs at least one new variable")
    images = [LinearForm(a.row(i)) for i in range(a.rows)]
    cache: dict[tuple[int, int], Form] = {}

    def image_power(i: int, e: int) -> Form:
        key = (i, e)
        if key not in cache:
            if images[i].is_zero():
                cache[key] = zero(a.cols, e)
            else:
                cache[key] = power(images[i], e)
        return cache[key]

    result = zero(a.cols, f.degree)
    one = Form(a.cols, 0, {(0,) * a.cols: 1})
    for mono, c in f._terms.items():
        term = one
        for i, e in enumerate(mono):
            if e:
                term = multiply(term, image_power(i, e))
        result = add(result, scale(term, c))
    return result


def contract(op: DualMonomial, f: Form) -> Form:
    """Apply ``prod(d/dx_i ** op[i])`` to ``f``."""
    op = tuple(op)
    if len(op) != f.num_vars:
        raise ValueError("operator and form have different variable counts")
    k = sum(op)
    if k > f.degree:
        return zero(f.num_vars, 0)
    terms = {}
    for mono, c in f._terms.items():
        if all(m >= e for m, e in zip(mono, op)):
            factor = 1
            for m, e in zip(mono, op):
                for j in range(e):
                    factor *= m - j
            terms[tuple(m - e for m, e in zip(mono, op))] = c * factor
    return Form(f.num_vars, f.degree - k, terms)


def apply_operator(op: Form, f: Form) -> Form:
    """Apply the differential operator with symbol ``op`` to ``f``."""
    if op.num_vars != f.num_vars:
        raise ValueError("operator and form have different variable counts")
    if op.degree > f.degree:
        return zero(f.num_vars, 0)
    result = zero(f.num_vars, f.degree - op.degree)
    for mono, c in op._terms.items():
        result = add(result, scale(contract(mono, f), c))
    return result


def evaluate(f: Form, point: Sequence) -> Fraction:
    point = [as_fraction(x) for x in point]
    if len(point) != f.num_vars:
        raise ValueError("point has the wrong number of coordinates")
    total = Fraction(0)
    for mono, c in f._terms.items():
        v = c
        for x, e in zip(point, mono):
            if e:
                v *= x ** e
        total += v
    return total


def embed(f: Form, offset: int, num_vars: int) -> Form:
    """Place ``f`` at variable indices ``offset .. offset + f.num_vars - 1`` of a larger ring."""
    if offset < 0 or offset + f.num_vars > num_vars:
        raise ValueError("embedding does not fit in the target ring")
    pad_left, pad_right = (0,) * offset, (0,) * (num_vars - offset - f.num_vars)
    return Form(num_vars, f.degree, {pad_left + m + pad_right: c for m, c in f._terms.items()})


def restrict(f: Form, offset: int, count: int) -> Form:
    """Inverse of :func:`embed`; fails if ``f`` uses variables outside the block."""
    terms = {}
    for m, c in f._terms.items():
        if any(m[:offset]) or any(m[offset + count:]):
            raise ValueError("form involves variables outside the requested block")
        terms[m[offset:offset + count]] = c
    return Form(count, f.degree, terms)


def joint_names(x_vars: int, y_vars: int) -> list[str]:
    return [f"x{i}" for i in range(x_vars)] + [f"y{j}" for j in range(y_vars)]


def _format_coefficient(c: Fraction) -> str:
    return str(c)


def to_text(f: Form, names: Sequence[str] | None = None) -> str:
    """Canonical graded-lex text, e.g. ``x0^3 + 3*x0*x1^2 - 1/2*x1^3``."""
    if names is None:
        names = [f"x{i}" for i in range(f.num_vars)]
    if len(names) != f.num_vars:
        raise ValueError("need one name per variable")
    if f.is_zero():
        return "0"
    pieces = []
    for i, (mono, c) in enumerate(f.items()):
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = _format_coefficient(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coefficient(mag) + "*" + "*".join(factors)
        if i == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)
