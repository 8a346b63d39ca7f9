"""Expression parser for the text data formats."""

from fractions import Fraction

import pytest

from darbouxlie.exactmath import Poly
from darbouxlie.exprparse import (ExprError, parse_condition, parse_expr,
                                  parse_poly, poly_env)

x = Poly.var


def test_parse_poly_basic():
    assert parse_poly("x1*x6 + 2*x3", 6) == x(0) * x(5) + 2 * x(2)
    assert parse_poly("x5^2", 6) == x(4) ** 2
    assert parse_poly("-(x1-x2)*x3", 6) == -(x(0) - x(1)) * x(2)
    assert parse_poly("x4/2", 6) == x(3) / 2
    assert parse_poly("3/4", 6) == Poly.const(Fraction(3, 4))


def test_parse_poly_with_params():
    p = parse_poly("(1+a)*x3+x4", 6, {"a": Fraction(1, 2)})
    assert p == Fraction(3, 2) * x(2) + x(3)


def test_parse_errors():
    with pytest.raises(ExprError):
        parse_poly("x9", 6)
    with pytest.raises(ExprError):
        parse_poly("x1/(x2)", 6)
    with pytest.raises(ExprError):
        parse_poly("x1 +", 6)
    with pytest.raises(ExprError):
        parse_poly("x1^x2", 6)
    with pytest.raises(ExprError):
        parse_poly("(x1", 6)


def test_parse_condition():
    env = {"a": Fraction(-3, 4), "b": Fraction(-1, 4)}
    assert parse_condition("a+b=-1", env)
    assert not parse_condition("a=1", env)
    assert parse_condition("a=1|a+b=-1", env)
    assert parse_condition("a!=1&b!=-1", env)
    assert parse_condition("", env)
    assert parse_condition("always", env)
    with pytest.raises(ExprError):
        parse_condition("a>1", env)


def test_nested_arithmetic():
    v = parse_expr("2*(1-(1/2))^3", {})
    assert v == Fraction(1, 4)
