from fractions import Fraction

import pytest

from k3quartic.fields import sqrt_field
from k3quartic.quartic import (
    ALPHA,
    ALPHA_INFINITY,
    Stable,
    Unstable,
    build_quartic,
    chart_sign_check,
    pencil_substitution_check,
    singular_points,
    stability,
)


def test_component_recovery_symbolic():
    fam = build_quartic(ALPHA)
    assert fam.component_recovery_check()


def test_component_recovery_specialized():
    fam = build_quartic(Fraction(81, 49))
    assert fam.component_recovery_check()


def test_pencil_substitution_identity():
    passed, residual = pencil_substitution_check()
    assert passed
    assert residual.is_zero


def test_pencil_substitution_negative_control():
    passed, residual = pencil_substitution_check(perturb=True)
    assert not passed
    assert not residual.is_zero


def test_chart_sign():
    assert chart_sign_check()


def test_singular_points_symbolic():
    fam = build_quartic(ALPHA)
    pts = singular_points(fam)
    assert len(pts) == 4
    nodes = [p for p in pts if "point" in p]
    assert len(nodes) == 3
    assert all(p["node"] for p in nodes)
    quad = [p for p in pts if "quadratic" in p][0]
    assert quad["degree"] == 2
    assert quad["discriminant"] == 4 * (1 - ALPHA)


def test_singular_points_with_verified_root():
    # 1 - 81/49 = -32/49, a square root lives in Q(sqrt(-2)): (4/7) sqrt(-2)
    K = sqrt_field(-2)
    s = Fraction(4, 7) * K.gen()
    fam = build_quartic(Fraction(81, 49))
    pts = singular_points(fam, sqrt_one_minus_alpha=s)
    assert len(pts) == 5
    assert all(p["node"] for p in pts)
    conic_line2 = [p for p in pts if p["components"] == ("conic", "line2")]
    assert len(conic_line2) == 2
    for p in conic_line2:
        x, t, t2 = p["point"]
        assert t * t + 2 * t + Fraction(81, 49) == 0


def test_singular_points_rejects_wrong_root():
    K = sqrt_field(-2)
    fam = build_quartic(Fraction(81, 49))
    with pytest.raises(ValueError):
        singular_points(fam, sqrt_one_minus_alpha=K.gen())


def test_singular_points_rational_split():
    # alpha = 3/4: t^2 + 2t + 3/4 = (t + 1/2)(t + 3/2)
    fam = build_quartic(Fraction(3, 4))
    pts = singular_points(fam)
    assert len(pts) == 5
    assert all(p["node"] for p in pts)
    ts = sorted(p["point"][1] for p in pts if p["components"] == ("conic", "line2"))
    assert ts == [Fraction(-3, 2), Fraction(-1, 2)]


def test_stability_classification():
    assert stability(Fraction(81, 49)) == Stable()
    assert stability(Fraction(5)) == Stable()
    assert stability(1) == Unstable("tacnode at (1:-1:1)")
    assert stability(0) == Unstable("triple point at (1:0:0)")
    assert stability(ALPHA_INFINITY) == Unstable("tangent at (0:0:1)")


def test_singular_points_rejects_infinity():
    fam = build_quartic(ALPHA_INFINITY)
    with pytest.raises(ValueError):
        singular_points(fam)
