from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import forms
from waringsac.parser import ParseError, parse_form
from waringsac.polyring import Form, joint_names


def test_simple_form():
    p = parse_form("x0^3 + 3*x0*x1^2")
    assert p.form.terms == {(3, 0): 1, (1, 2): 3}
    assert (p.x_vars, p.y_vars) == (2, 0)


def test_linear_power():
    assert parse_form("(x0+x1)^2").form.terms == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert parse_form("(x0 + 2*x1)^3").form.coefficient((1, 2)) == 12


def test_inhomogeneous_rejected():
    with pytest.raises(ParseError, match="inhomogeneous"):
        parse_form("x0^2 + x0")


def test_degree_mismatch():
    with pytest.raises(ParseError, match="expected degree"):
        parse_form("x0^2", expected_degree=3)


def test_syntax_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_form("x0^2 + $x1^2")
    assert info.value.position == 7


def test_unbalanced_parenthesis():
    with pytest.raises(ParseError):
        parse_form("(x0 + x1^2")


def test_rational_coefficients_and_implicit_multiplication():
    p = parse_form("-3/4 x0 x1 + 2 x1^2")
    assert p.form.terms == {(1, 1): Fraction(-3, 4), (0, 2): 2}


def test_division_by_zero_is_an_error():
    with pytest.raises(ParseError):
        parse_form("x0^2/0")


def test_x_and_y_blocks():
    p = parse_form("x0^2 + y1^2")
    assert (p.x_vars, p.y_vars) == (1, 2)
    assert p.names == ["x0", "y0", "y1"]
    assert p.form.terms == {(2, 0, 0): 1, (0, 0, 2): 1}


def test_zero_needs_a_degree():
    with pytest.raises(ParseError):
        parse_form("x0 - x0")
    assert parse_form("x0 - x0", expected_degree=1).form.is_zero()


def test_cancellation_to_a_lower_expression():
    # (x0+x1)^2 - (x0-x1)^2 = 4 x0 x1
    assert parse_form("(x0+x1)^2 - (x0-x1)^2").form.terms == {(1, 1): 4}


def test_double_star_power():
    assert parse_form("x0**3").form == Form.monomial((3,))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2), st.data())
def test_round_trip(nx, ny, data):
    f = data.draw(forms(num_vars=nx + ny))
    text = f.to_text(joint_names(nx, ny))
    back = parse_form(text, expected_degree=f.degree, x_vars=nx, y_vars=ny)
    assert back.form == f
    assert back.source == text
