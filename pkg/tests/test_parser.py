import random
from fractions import Fraction

import pytest

from weylcas.ore import DiffOp, OreRing
from weylcas.parser import (
    ParseError,
    diffop_to_str,
    parse_expr,
    parse_operator,
    parse_polynomial,
)
from weylcas.poly import SparsePoly

W2 = OreRing.weyl(("x1", "x2"))


def test_parse_simple_polynomial():
    p = parse_polynomial("(x+1)^2", ("x",))
    x = SparsePoly.variable(("x",), 0)
    assert p == x ** 2 + 2 * x + 1


def test_parse_rational_coefficients():
    p = parse_polynomial("1/2*x + 3", ("x",))
    x = SparsePoly.variable(("x",), 0)
    assert p == Fraction(1, 2) * x + 3


def test_parse_leading_minus():
    p = parse_polynomial("-x + 1", ("x",))
    x = SparsePoly.variable(("x",), 0)
    assert p == 1 - x


def test_negative_power_rejected():
    with pytest.raises(ParseError):
        parse_expr("x^-1")


def test_undeclared_identifier():
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + z", ("x",))
    assert "z" in str(err.value)


def test_syntax_error_has_span():
    with pytest.raises(ParseError) as err:
        parse_expr("x + ")
    assert err.value.span == (4, 4)


def test_operator_commutation_through_parser():
    op = parse_operator("d1*x1", W2)
    x1 = SparsePoly.variable(W2.vars, 0)
    expected = DiffOp(W2, {(1, 0): x1, (0, 0): SparsePoly.one(W2.vars)}, "left")
    assert op == expected


def test_print_left_normal_form():
    op = parse_operator("d1*x1", W2)
    assert diffop_to_str(op) == "x1*d1 + 1"


def test_print_right_normal_form():
    op = parse_operator("x1*d1", W2).to_right()
    assert diffop_to_str(op) == "d1*x1 - 1"


def test_round_trip_fixed_cases():
    cases = [
        "x1*d1 + 1",
        "(x1^2 + x2)*d1^2*d2 - 3*d2 + x2",
        "d1^3 - 1/2*x1",
        "-d1 + x2^4",
    ]
    for text in cases:
        op = parse_operator(text, W2)
        assert parse_operator(diffop_to_str(op), W2) == op


def test_round_trip_random():
    rng = random.Random(5)
    for _ in range(40):
        terms = {}
        for _ in range(3):
            alpha = (rng.randrange(3), rng.randrange(3))
            coeff = {}
            for _ in range(2):
                e = (rng.randrange(3), rng.randrange(3))
                coeff[e] = coeff.get(e, 0) + Fraction(rng.randint(-4, 4))
            p = SparsePoly(W2.vars, coeff)
            if not p.is_zero():
                terms[alpha] = p
        op = DiffOp(W2, terms, "left")
        assert parse_operator(diffop_to_str(op), W2) == op
        right = op.to_right()
        assert parse_operator(diffop_to_str(right), W2) == op


def test_parse_print_parse_fixed_point():
    text = "x1*d1 + 1"
    op1 = parse_operator(text, W2)
    printed = diffop_to_str(op1)
    op2 = parse_operator(printed, W2)
    assert diffop_to_str(op2) == printed


def test_ore_variable_parsing():
    ring = OreRing.differential_polynomial(("x",), [SparsePoly.one(("x",))])
    op = parse_operator("X*x", ring)
    x = SparsePoly.variable(("x",), 0)
    assert op == DiffOp(ring, {(1,): x, (0,): SparsePoly.one(("x",))}, "left")


def test_polynomial_rejects_operators():
    with pytest.raises(ParseError):
        parse_polynomial("d1*x1", ("x1",))
