from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import forms, sympy_binary_rank
from waringsac.polyring import Form, LinearForm, power, substitute
from waringsac.waring import (
    Decomposition,
    RankCertificate,
    binary_gcd,
    binary_rank,
    catalecticant_lower_bound,
    expand,
    fold_collinear,
    is_squarefree_binary,
    monomial_rank,
    powers_dependence,
)


def test_expand_examples():
    assert expand(Decomposition(3, 1, [(1, [1])])) == Form.monomial((3,))
    assert expand(Decomposition(3, 2, [(1, [1, 0]), (1, [0, 1])])) == Form(2, 3, {(3, 0): 1, (0, 3): 1})
    dec = Decomposition(2, 2, [(1, [1, 1]), (-1, [1, -1])])
    assert expand(dec) == Form(2, 2, {(1, 1): 4})


def test_decomposition_normalizes_and_merges():
    dec = Decomposition(2, 2, [(1, [2, 2]), (1, [1, 1])])
    assert len(dec) == 1
    c, lin = dec.terms[0]
    assert lin.coefficients == (1, 1) and c == 5


def test_certificate_invariants():
    with pytest.raises(ValueError):
        RankCertificate(3, 2, "sylvester")
    with pytest.raises(ValueError):
        RankCertificate(1, 2, "sylvester", exact=1)
    assert RankCertificate(2, 2, "sylvester").exact == 2


@pytest.mark.parametrize("d", range(2, 9))
def test_golden_binary_ranks(d):
    assert binary_rank(Form.monomial((d, 0))).exact == 1
    assert binary_rank(Form.monomial((1, d - 1))).exact == d


def test_sum_of_cubes_and_square_square():
    cert = binary_rank(Form(2, 3, {(3, 0): 1, (0, 3): 1}))
    assert cert.exact == 2 and cert.method == "sylvester"
    assert expand(cert.decomposition) == Form(2, 3, {(3, 0): 1, (0, 3): 1})
    assert binary_rank(Form.monomial((2, 2))).exact == 3


def test_x0_x1_squared_records_apolar_pair():
    cert = binary_rank(Form.monomial((1, 2)))
    assert cert.exact == 3
    assert [a.degree for a in cert.apolar] == [2, 3]
    assert cert.apolar[0] == Form.monomial((2, 0))


def test_binary_rank_through_essential_reduction():
    f = power([1, 1, -1], 3) + power([1, 0, 2], 3)
    cert = binary_rank(f)
    assert cert.exact == 2
    assert expand(cert.decomposition) == f


def test_binary_rank_rejects_three_essential_variables():
    with pytest.raises(ValueError):
        binary_rank(Form(3, 2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}))


def test_squarefree_examples():
    assert is_squarefree_binary(Form.monomial((1, 1)))
    assert not is_squarefree_binary(Form.monomial((2, 0)))
    assert is_squarefree_binary(Form(2, 2, {(2, 0): 1, (0, 2): 1}))
    assert not is_squarefree_binary(power([1, 3], 2) * 7)


def test_binary_gcd_finds_common_factor():
    a = Form(2, 2, {(2, 0): 1, (0, 2): -1})   # (x0 - x1)(x0 + x1)
    b = Form(2, 2, {(2, 0): 1, (1, 1): -1})   # x0 (x0 - x1)
    g = binary_gcd(a, b)
    assert g.degree == 1
    assert g.coefficient((1, 0)) == -g.coefficient((0, 1))


def test_monomial_rank_examples():
    assert monomial_rank((1, 6)).exact == 7
    assert monomial_rank((5,)).exact == 1
    assert monomial_rank((2, 2)).exact == 3
    assert monomial_rank((2, 3, 4)).exact == 20
    with pytest.raises(ValueError):
        monomial_rank((0, 2))


def test_catalecticant_lower_bound_examples():
    assert catalecticant_lower_bound(Form.monomial((5, 0))) == 1
    assert catalecticant_lower_bound(Form(2, 3, {(3, 0): 1, (0, 3): 1})) == 2
    assert catalecticant_lower_bound(Form.monomial((1, 5))) == 2


def test_powers_dependence_examples():
    rel = powers_dependence([[1, 0], [0, 1], [1, 1], [1, -1]], 2)
    assert rel is not None
    total = sum((power(l, 2) * c for c, l in zip(rel, [[1, 0], [0, 1], [1, 1], [1, -1]])),
                Form(2, 2))
    assert total.is_zero()
    assert powers_dependence([[1, 0], [0, 1]], 5) is None
    assert powers_dependence([[1, t] for t in range(6)], 4) is not None


def test_fold_collinear_examples():
    dec = Decomposition(2, 2, [(1, [1, 0]), (1, [0, 1]), (1, [1, 1]), (1, [1, -1])])
    folded = fold_collinear(dec)
    assert len(folded) <= 3 and expand(folded) == expand(dec)
    general = Decomposition(3, 3, [(1, [1, 0, 0]), (2, [0, 1, 0]), (-1, [0, 0, 1]), (1, [1, 1, 1])])
    assert fold_collinear(general) == general
    line = Decomposition(3, 3, [(k + 1, [1, k, 2 * k]) for k in range(5)])
    assert len(fold_collinear(line)) < 5
    assert expand(fold_collinear(line)) == expand(line)


@settings(max_examples=150, deadline=None)
@given(forms(num_vars=2, max_terms=6))
def test_binary_rank_matches_sympy_sylvester(f):
    cert = binary_rank(f)
    assert cert.exact == sympy_binary_rank(f)
    assert 1 <= cert.exact <= f.degree
    if cert.decomposition is not None:
        assert len(cert.decomposition) == cert.exact
        assert expand(cert.decomposition) == f


@settings(max_examples=60, deadline=None)
@given(forms(num_vars=2, max_terms=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_binary_rank_is_invariant_under_linear_change(f, entries):
    a, b, c, d = entries
    if a * d - b * c == 0:
        return
    g = substitute(f, [[a, b], [c, d]])
    assert binary_rank(g, witness=False).exact == binary_rank(f, witness=False).exact


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.data())
def test_fold_preserves_expansion(d, data):
    n = data.draw(st.integers(2, 3))
    vecs = data.draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n)
                              .filter(any), min_size=1, max_size=d + 3))
    coeffs = data.draw(st.lists(st.integers(1, 4), min_size=len(vecs), max_size=len(vecs)))
    dec = Decomposition(d, n, zip(coeffs, vecs))
    folded = fold_collinear(dec)
    assert len(folded) <= len(dec)
    assert expand(folded) == expand(dec)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7))
def test_pure_power_iff_rank_one(d):
    lin = LinearForm([Fraction(3, 2), -2])
    assert binary_rank(power(lin, d)).exact == 1
    assert binary_rank(power(lin, d) + Form.monomial((d, 0))).exact == 2
