from fractions import Fraction

import pytest

from k3quartic.fields import gaussian_field
from k3quartic.multipoly import MultiPoly, QuotientContext, QuotientFraction
from k3quartic.polynomials import Poly

V = ("x", "y")
x = MultiPoly.gen(V, "x")
y = MultiPoly.gen(V, "y")


def test_basic_arithmetic():
    p = (x + y) ** 2
    assert p == x ** 2 + 2 * x * y + y ** 2
    assert p.degree_in("x") == 2
    assert p.total_degree() == 2
    assert (p - p).is_zero


def test_substitute_polynomials():
    p = x ** 2 - y
    q = p.substitute({"x": y + 1})
    assert q == y ** 2 + y + 1
    r = p.substitute({"x": Fraction(3), "y": 2})
    assert r == 7


def test_substitute_leaves_unmapped_fixed():
    p = x * y + y ** 2
    q = p.substitute({"x": x + 1})
    assert q == x * y + y + y ** 2


def test_evaluate_with_field_elements():
    QI = gaussian_field()
    i = QI.gen()
    p = x ** 2 + y ** 2
    assert p.evaluate({"x": i, "y": 1}) == 0


def test_exact_division():
    a = (x + y) * (x ** 2 - y + 3)
    assert a.try_exact_div(x + y) == x ** 2 - y + 3
    assert a.try_exact_div(x - y) is None
    with pytest.raises(ZeroDivisionError):
        a.try_exact_div(MultiPoly.zero(V))


def test_to_poly_and_from_poly():
    p = 2 * x ** 3 - x + 5
    uni = p.to_poly("x", Poly)
    assert uni == 2 * Poly.x("x") ** 3 - Poly.x("x") + 5
    back = MultiPoly.from_poly(uni, V)
    assert back == p
    with pytest.raises(ValueError):
        (x + y).to_poly("x", Poly)


def test_derivative():
    p = x ** 3 * y + 2 * y ** 2
    assert p.derivative("x") == 3 * x ** 2 * y
    assert p.derivative("y") == x ** 3 + 4 * y


CURVE_VARS = ("rho", "tau")
rho = MultiPoly.gen(CURVE_VARS, "rho")
tau = MultiPoly.gen(CURVE_VARS, "tau")


def curve_ctx():
    return QuotientContext(CURVE_VARS, [("tau", 2, rho ** 3 - rho)])


def test_quotient_reduce():
    ctx = curve_ctx()
    assert ctx.reduce(tau ** 2) == rho ** 3 - rho
    assert ctx.reduce(tau ** 3) == (rho ** 3 - rho) * tau
    assert ctx.reduce(tau ** 4) == (rho ** 3 - rho) ** 2
    assert ctx.is_zero(tau ** 2 - rho ** 3 + rho)


def test_quotient_reduce_rejects_head_in_replacement():
    with pytest.raises(ValueError):
        QuotientContext(CURVE_VARS, [("tau", 2, tau + rho)])


def test_quotient_fraction_equality():
    ctx = curve_ctx()
    t = QuotientFraction(ctx, tau)
    r = QuotientFraction(ctx, rho)
    assert t * t == r ** 3 - r
    assert t ** 4 == (r ** 3 - r) ** 2
    # (tau/rho)^2 == (rho^2 - 1)/rho on the curve
    assert (t / r) ** 2 == (r ** 2 - 1) / r
    assert (1 + t) / (1 - t) * ((1 - t) / (1 + t)) == 1


def test_quotient_fraction_zero_denominator():
    ctx = curve_ctx()
    t = QuotientFraction(ctx, tau)
    with pytest.raises(ZeroDivisionError):
        t / (t * t - (rho ** 3 - rho))


def test_two_relation_context():
    vars3 = ("r", "t", "w")
    r = MultiPoly.gen(vars3, "r")
    t = MultiPoly.gen(vars3, "t")
    w = MultiPoly.gen(vars3, "w")
    ctx = QuotientContext(vars3, [("t", 2, r ** 2 + 1), ("w", 4, r - 1)])
    red = ctx.reduce(t ** 2 * w ** 5)
    assert red == (r ** 2 + 1) * (r - 1) * w
    assert ctx.is_zero((t ** 2 - r ** 2 - 1) * w ** 3)
