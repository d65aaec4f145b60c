from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homogeneity.jets import (
    JetElement,
    JetOrderError,
    NON_COMMUTING_WITNESS,
    NonInvertibleJetError,
    gk_compose,
    gk_inverse,
    weil_endo,
)
from homogeneity.m2 import m2_embed, matmul

from strategies import jets, rationals

J = lambda *c: JetElement(tuple(Fraction(x) for x in c))


def test_g2_examples():
    assert gk_compose(J(2, 1), J(3, 4)) == J(6, 17)
    assert gk_compose(J(1, 0), J(3, 4)) == J(3, 4)
    assert gk_inverse(J(2, 1)) == J(Fraction(1, 2), Fraction(-1, 8))
    assert gk_inverse(J(1, 0)) == J(1, 0)
    assert gk_inverse(J(-1, 0)) == J(-1, 0)


def test_non_commuting_witness():
    p, q = NON_COMMUTING_WITNESS
    assert gk_compose(p, q) == J(2, 4)
    assert gk_compose(q, p) == J(2, 2)


def test_errors():
    with pytest.raises(JetOrderError):
        gk_compose(J(1, 0), J(1, 0, 0))
    with pytest.raises(NonInvertibleJetError):
        gk_inverse(J(0, 1))


@settings(max_examples=200)
@given(rationals, rationals, rationals, rationals)
def test_g2_product_formula(a, b, A, B):
    assert gk_compose(J(a, b), J(A, B)) == J(a * A, a * B + b * A * A)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_associativity(k, data):
    p, q, r = (data.draw(jets(k)) for _ in range(3))
    assert gk_compose(gk_compose(p, q), r) == gk_compose(p, gk_compose(q, r))


@given(rationals, rationals)
def test_order_one_is_multiplication(x, y):
    assert gk_compose(J(x), J(y)) == J(x * y)


@pytest.mark.parametrize("k", [2, 3, 4])
@given(data=st.data())
def test_scalings_form_a_submonoid(k, data):
    x, y = data.draw(rationals), data.draw(rationals)
    zeros = [0] * (k - 1)
    assert gk_compose(J(x, *zeros), J(y, *zeros)) == J(x * y, *zeros)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
@given(data=st.data())
def test_inverse_both_sides(k, data):
    p = data.draw(jets(k, invertible=True))
    one = JetElement.identity(k)
    assert gk_compose(p, gk_inverse(p)) == one == gk_compose(gk_inverse(p), p)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_weil_opposite_order(k, data):
    p, q = data.draw(jets(k)), data.draw(jets(k))
    assert weil_endo(p) @ weil_endo(q) == weil_endo(gk_compose(q, p))


def test_weil_identity_and_nilpotent():
    one = weil_endo(JetElement.identity(3))
    assert one([1, 2, 3, 4]) == [1, 2, 3, 4]
    sq = weil_endo(J(0, 1))
    assert (sq @ sq).image == [0, 0, 0]


@given(rationals, rationals, rationals, rationals)
def test_m2_embedding_is_multiplicative(a, b, A, B):
    p, q = J(a, b), J(A, B)
    assert m2_embed(gk_compose(p, q)) == matmul(m2_embed(p), m2_embed(q))


def test_m2_embedding_examples():
    assert m2_embed(J(1, 0)) == [[1, 0], [0, 1]]
    assert matmul(m2_embed(J(2, 1)), m2_embed(J(3, 4))) == m2_embed(J(6, 17))
