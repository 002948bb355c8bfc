"""Independent oracles built on sympy, shared by the test modules."""

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from waringsac.polyring import Form, monomials


def sym_vars(n, prefix="x"):
    return sympy.symbols(f"{prefix}0:{n}") if n else ()


def to_sympy(f: Form, prefix="x"):
    xs = sym_vars(f.num_vars, prefix)
    expr = sympy.Integer(0)
    for mono, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for x, e in zip(xs, mono):
            term *= x ** e
        expr += term
    return sympy.expand(expr), xs


def from_sympy(expr, xs, degree) -> Form:
    poly = sympy.Poly(sympy.expand(expr), *xs)
    if poly.is_zero:
        return Form(len(xs), degree)
    terms = {}
    for mono, c in poly.terms():
        terms[tuple(mono)] = Fraction(int(c.p), int(c.q))
    return Form(len(xs), degree, terms)


def sympy_rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(str(x)) for x in r] for r in rows]).rank()


def sympy_binary_rank(f: Form) -> int:
    """Sylvester's algorithm written directly on top of sympy.

    With ``F = sum binom(d, i) a_i x0^(d-i) x1^i`` an operator
    ``sum c_j D0^(k-j) D1^j`` kills ``F`` iff ``c`` is in the kernel of the
    Hankel matrix ``[a_(m+j)]``.
    """
    assert f.num_vars == 2
    d = f.degree
    a = [sympy.Rational(f.coefficient((d - i, i)).numerator, f.coefficient((d - i, i)).denominator)
         / sympy.binomial(d, i) for i in range(d + 1)]
    t0, t1 = sympy.symbols("t0 t1")
    for k in range(1, d + 2):
        h = sympy.Matrix(d - k + 1, k + 1, lambda m, j: a[m + j]) if k <= d else sympy.zeros(0, k + 1)
        kernel = h.nullspace() if k <= d else [sympy.Matrix([1] + [0] * k)]
        if not kernel:
            continue
        if len(kernel) >= 2:
            return k
        c = kernel[0]
        p = sum(c[j] * t0 ** (k - j) * t1 ** j for j in range(k + 1))
        _, factors = sympy.sqf_list(sympy.Poly(p, t0, t1))
        squarefree = all(m == 1 for _, m in factors)
        return k if squarefree else d + 2 - k
    raise AssertionError("unreachable")


def small_fractions(max_den=4):
    return st.builds(Fraction, st.integers(-6, 6), st.integers(1, max_den))


@st.composite
def forms(draw, num_vars=None, degree=None, max_terms=5, allow_zero=False):
    n = draw(st.integers(1, 3)) if num_vars is None else num_vars
    d = draw(st.integers(1, 5)) if degree is None else degree
    mons = monomials(n, d)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(small_fractions(), min_size=len(chosen), max_size=len(chosen)))
    f = Form(n, d, dict(zip(chosen, coeffs)))
    if not allow_zero and f.is_zero():
        f = Form(n, d, {chosen[0]: 1})
    return f


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
