from fractions import Fraction

import pytest

from k3quartic.fibration import (
    NotTwistMinimalError,
    classify_fibers,
    degeneration_model,
    form_scaling_order,
    multiplicative_order,
    parity_refine,
    quartic_twist,
    shioda_tate_bound,
    standard_beta,
    standard_family,
    twist_minimize,
    verify_reduction_chain,
    weierstrass_reduce,
)
from k3quartic.fields import eighth_root_field, gaussian_field
from k3quartic.polynomials import Poly, RationalFunction
from k3quartic.quartic import ALPHA

LAM = Poly.x("lam")
A_SYM = Poly("lam", {2: 1, 1: 2, 0: ALPHA})


def test_reduction_chain_residuals():
    chain = verify_reduction_chain()
    assert chain == {
        "quartic_to_even": True,
        "even_to_scaled_weierstrass": True,
        "scaled_to_weierstrass": True,
        "closed_form_u": True,
        "closed_form_v": True,
    }


def test_weierstrass_reduce_standard_beta():
    red = weierstrass_reduce(standard_beta())
    assert red["coefficient"] == 16 / (LAM * A_SYM ** 2)


def test_weierstrass_reduce_rejects_zero():
    with pytest.raises(ZeroDivisionError):
        weierstrass_reduce(RationalFunction(Poly.constant("lam", 0)))


def test_standard_family_polynomial_model():
    fib = standard_family()
    assert fib.f == LAM ** 3 * A_SYM ** 2
    assert fib.provenance["twist"] == 2 / (LAM * A_SYM)


def test_quartic_twist_transport():
    g = 16 / (LAM * A_SYM ** 2)
    s = 2 / (LAM * A_SYM)
    assert quartic_twist(g, s) == LAM ** 3 * A_SYM ** 2


def test_generic_fiber_table():
    cfg = standard_family().classify()
    assert cfg.total_euler == 24
    assert cfg.type_multiset() == sorted(["III*", "I0*", "I0*", "III"])
    assert cfg.fiber_at_infinity().type == "III"
    quad = [fb for fb in cfg.fibers if fb.degree == 2]
    assert len(quad) == 1
    assert quad[0].type == "I0*"
    assert quad[0].certified  # irreducible over Q(alpha): 1 - alpha not a square
    third = [fb for fb in cfg.fibers if fb.type == "III*"]
    assert len(third) == 1 and third[0].location == LAM


def test_specialized_fiber_tables():
    cfg = standard_family(Fraction(81, 49)).classify()
    assert cfg.total_euler == 24
    assert cfg.type_multiset() == sorted(["III*", "I0*", "I0*", "III"])
    assert all(fb.certified for fb in cfg.fibers)

    # alpha = 3/4 splits the quadratic into two rational I0* places
    cfg2 = standard_family(Fraction(3, 4)).classify()
    assert cfg2.total_euler == 24
    dubs = [fb for fb in cfg2.fibers if fb.type == "I0*"]
    assert sorted(str(fb.location) for fb in dubs) == ["lam + 1/2", "lam + 3/2"]


def test_shioda_tate_and_parity():
    cfg = standard_family().classify()
    assert shioda_tate_bound(cfg) == 18
    assert shioda_tate_bound(cfg, 1) == 19
    assert parity_refine(19) == 20
    assert parity_refine(18) == 18
    assert parity_refine(20) == 20
    with pytest.raises(ValueError):
        parity_refine(21)
    with pytest.raises(ValueError):
        shioda_tate_bound(cfg, -1)


def test_twist_minimize():
    f = LAM ** 5 * (LAM + 2)
    reduced, g = twist_minimize(f)
    assert reduced == LAM * (LAM + 2)
    assert g == LAM
    assert reduced * g ** 4 == f

    f2 = (LAM - 1) ** 8
    reduced2, g2 = twist_minimize(f2)
    assert reduced2 == Poly.constant("lam", 1)
    assert g2 == (LAM - 1) ** 2


def test_classify_requires_twist_minimal():
    with pytest.raises(NotTwistMinimalError):
        classify_fibers(LAM ** 4 * (LAM + 1))


def test_classify_no_fibers_for_constant():
    cfg = classify_fibers(Poly.constant("lam", 3))
    assert cfg.fibers == []
    assert cfg.total_euler == 0


def test_degeneration_at_infinity():
    d = degeneration_model("AtInfinity")
    assert d["chain_residual_zero"]
    member = d["beta_zero_member"]
    assert member.f == LAM ** 3 * (LAM ** 2 + 1) ** 2
    cfg = member.classify()
    assert cfg.total_euler == 24
    assert cfg.type_multiset() == sorted(["III*", "I0*", "I0*", "III"])
    quad = [fb for fb in cfg.fibers if fb.degree == 2][0]
    assert quad.certified
    # the generic member of the degenerate family still totals 24
    assert classify_fibers(d["family"]).total_euler == 24


def test_degeneration_at_zero():
    d = degeneration_model("AtZero")
    assert d["chain_residual_zero"]
    member = d["beta_zero_member"]
    mu = Poly.x("mu")
    assert member.f == mu ** 3 * (mu + 2) ** 2
    cfg = member.classify()
    assert cfg.total_euler == 24
    assert cfg.type_multiset() == sorted(["III*", "III*", "I0*"])
    assert shioda_tate_bound(cfg) == 20
    assert classify_fibers(d["family"]).total_euler == 24


def test_degeneration_rejects_unknown_kind():
    with pytest.raises(ValueError):
        degeneration_model("AtOne")


def test_form_scaling_order_eight():
    K = eighth_root_field()
    z8 = K.gen()
    f0 = LAM ** 3 * (LAM ** 2 + 1) ** 2
    s, order = form_scaling_order(z8 ** 2, z8 ** 3, K.from_rational(-1), f0)
    assert order == 8
    assert s == z8 ** 3
    assert s == -(z8 ** -1)


def test_form_scaling_identity_and_negation():
    G = gaussian_field()
    f0 = LAM ** 3 * (LAM ** 2 + 1) ** 2
    s, order = form_scaling_order(G.one, G.one, G.one, f0)
    assert (s, order) == (1, 1)
    s2, order2 = form_scaling_order(G.one, -G.one, G.one, f0)
    assert order2 == 2
    assert s2 == -1


def test_form_scaling_rejects_non_automorphism():
    G = gaussian_field()
    with pytest.raises(ValueError):
        form_scaling_order(G.one, G.one, -G.one, LAM ** 3)
    with pytest.raises(ValueError):
        form_scaling_order(G.one, G.from_rational(2), G.one, LAM ** 3)


def test_multiplicative_order_cap():
    G = gaussian_field()
    assert multiplicative_order(G.from_rational(1)) == 1
    with pytest.raises(ValueError):
        multiplicative_order(G.from_rational(2), cap=10)
