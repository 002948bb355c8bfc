from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import forms, sympy_rank, to_sympy
from waringsac.apolarity import (
    apolar_graded_piece,
    catalecticant,
    catalecticant_rank,
    essential_reduction,
    essential_variable_count,
)
from waringsac.polyring import Form, apply_operator, embed, power, substitute


def test_catalecticant_of_x0x1():
    cat = catalecticant(Form.monomial((1, 1)), 1)
    assert cat.matrix.to_rows() == [[0, 1], [1, 0]]
    assert cat.rank == 2


@pytest.mark.parametrize("d", [2, 3, 5])
def test_pure_power_catalecticants_have_rank_one(d):
    f = Form.monomial((d, 0))
    assert all(catalecticant_rank(f, k) == 1 for k in range(1, d + 1))


def test_sum_of_cubes():
    f = Form(2, 3, {(3, 0): 1, (0, 3): 1})
    assert catalecticant_rank(f, 1) == 2
    assert apolar_graded_piece(f, 1) == []
    (op,) = apolar_graded_piece(f, 2)
    assert op == Form.monomial((1, 1))
    assert apply_operator(op, f).is_zero()


def test_apolar_piece_of_pure_cube_in_two_variables():
    assert apolar_graded_piece(Form.monomial((3, 0)), 1) == [Form.monomial((0, 1))]


def test_degree_out_of_range():
    f = Form.monomial((3, 0))
    with pytest.raises(ValueError):
        catalecticant(f, 0)
    with pytest.raises(ValueError):
        catalecticant(f, 4)


def test_essential_variable_examples():
    assert essential_variable_count(Form.monomial((4, 0, 0))) == 1
    assert essential_variable_count(power([1, 1], 2)) == 1
    assert essential_variable_count(Form(3, 2, {(2, 0, 0): 1, (1, 1, 0): 1})) == 2


def test_essential_reduction_examples():
    red = essential_reduction(Form.monomial((3, 0, 0)))
    assert red.count == 1 and red.form == Form.monomial((3,))
    red = essential_reduction(power([1, 1], 3))
    assert red.count == 1
    assert substitute(red.form, red.matrix) == power([1, 1], 3)
    f = Form(3, 2, {(2, 0, 0): 1, (1, 1, 0): 1})
    red = essential_reduction(f)
    assert red.count == 2 and substitute(red.form, red.matrix) == f


def test_zero_form_has_no_essential_variables():
    with pytest.raises(ValueError):
        essential_variable_count(Form(2, 3))


def sympy_catalecticant_rank(f, k):
    """Rank of the span of all order-k partial derivatives, via sympy."""
    expr, xs = to_sympy(f)
    rows = []
    for mono in sympy.itermonomials(xs, k, k) if k else [1]:
        deriv = expr
        for x in xs:
            deriv = sympy.diff(deriv, x, sympy.degree(mono, x))
        poly = sympy.Poly(deriv, *xs)
        rows.append(poly)
    targets = sorted({m for p in rows for m in p.monoms()})
    if not targets:
        return 0
    mat = [[p.coeff_monomial(m) for m in targets] for p in rows]
    return sympy.Matrix(mat).rank()


@settings(max_examples=80, deadline=None)
@given(forms(), st.data())
def test_catalecticant_rank_matches_sympy(f, data):
    k = data.draw(st.integers(1, f.degree))
    assert catalecticant_rank(f, k) == sympy_catalecticant_rank(f, k)


@settings(max_examples=80, deadline=None)
@given(forms(), st.data())
def test_apolar_piece_is_the_annihilator(f, data):
    k = data.draw(st.integers(1, f.degree))
    piece = apolar_graded_piece(f, k)
    total = comb(f.num_vars + k - 1, k)
    assert len(piece) == total - catalecticant_rank(f, k)
    for op in piece:
        assert apply_operator(op, f).is_zero()
    assert sympy_rank([list(op.coefficient_vector()) for op in piece] or [[0]]) == len(piece)


@settings(max_examples=80, deadline=None)
@given(forms(max_terms=4), st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3),
                                    min_size=1, max_size=3))
def test_essential_reduction_round_trip(base, rows):
    """A form pulled back from fewer variables keeps its essential count."""
    rows = rows[: base.num_vars] + [[0, 0, 0]] * (base.num_vars - len(rows))
    f = substitute(base, rows)
    if f.is_zero():
        return
    red = essential_reduction(f)
    assert substitute(red.form, red.matrix) == f
    assert red.count == essential_variable_count(f) <= min(3, base.num_vars)
    assert essential_variable_count(red.form) == red.count


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.data())
def test_catalecticants_add_over_disjoint_blocks(d, data):
    """Block additivity holds for 1 <= k <= d-1; at k = d both sides are constant rows."""
    f = data.draw(forms(num_vars=2, degree=d))
    g = data.draw(forms(num_vars=2, degree=d))
    fg = embed(f, 0, 4) + embed(g, 2, 4)
    k = data.draw(st.integers(1, d - 1))
    assert catalecticant_rank(fg, k) == catalecticant_rank(f, k) + catalecticant_rank(g, k)
