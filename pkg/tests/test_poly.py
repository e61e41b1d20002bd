from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylcas.poly import GREVLEX, LEX, SparsePoly, TermOrder

XY = ("x", "y")


def P(terms):
    return SparsePoly(XY, terms)


x = SparsePoly.variable(XY, 0)
y = SparsePoly.variable(XY, 1)
one = SparsePoly.one(XY)


def test_difference_of_squares():
    assert (x + one) * (x - one) == x * x - one


def test_multiply_by_zero():
    p = x * y + 3 * x
    assert p * SparsePoly.zero(XY) == SparsePoly.zero(XY)
    assert (p * 0).is_zero()


def test_binomial_square():
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y


def test_canonical_no_zero_terms():
    p = x - x
    assert p.terms == {}
    q = P({(1, 0): Fraction(1), (0, 1): Fraction(0)})
    assert (0, 1) not in q.terms


def test_var_mismatch_raises():
    z = SparsePoly.variable(("z",), 0)
    with pytest.raises(ValueError):
        x + z
    with pytest.raises(ValueError):
        x * z


def test_partial_derivatives():
    assert (x ** 2).partial(0) == 2 * x
    assert (y ** 3).partial(0).is_zero()
    assert (x ** 2 * y + x).partial(0) == 2 * x * y + one


def test_leibniz_rule_specific():
    p = x ** 2 + y
    q = x * y - 1
    lhs = (p * q).partial(0)
    assert lhs == p.partial(0) * q + p * q.partial(0)


def test_substitute():
    p = x ** 2 + y
    assert p.substitute(0, y) == y ** 2 + y


def test_grevlex_vs_lex_leading_term():
    p = x * y ** 2 + x ** 2
    # grevlex: x*y^2 (degree 3) beats x^2
    assert p.leading_term(GREVLEX)[0] == (1, 2)
    # lex with x > y: x^2 beats x*y^2
    assert p.leading_term(LEX)[0] == (2, 0)


def test_lex_priority_permutation():
    order = TermOrder("lex", priority=(1, 0))  # y > x
    p = x ** 3 + y
    assert p.leading_term(order)[0] == (0, 1)


def test_to_str_round_shape():
    p = 2 * x ** 2 - y + SparsePoly.constant(XY, Fraction(1, 2))
    assert p.to_str() == "2*x^2 - y + 1/2"


small_polys = st.builds(
    lambda terms: SparsePoly(XY, terms),
    st.dictionaries(
        st.tuples(st.integers(0, 4), st.integers(0, 4)),
        st.fractions(min_value=-5, max_value=5),
        max_size=5,
    ),
)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p


@settings(max_examples=40, deadline=None)
@given(small_polys, small_polys)
def test_leibniz_property(p, q):
    for i in range(2):
        assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)
