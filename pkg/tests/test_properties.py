"""Randomized invariants backing up the frozen examples.

Cheap algebraic laws run under hypothesis.  The end-to-end suites that
rebuild fibrations or factor cover composites use seeded loops instead, so
one run stays fast and reproducible.
"""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from k3quartic.covers import (
    CoverSplits,
    Parametrization,
    SPLIT_PARAM_QUARTIC,
    SPLIT_PARAM_SEXTIC,
    fourth_power_test,
)
from k3quartic.curves import EC_INFINITY, ec_add, ec_neg, on_curve
from k3quartic.fibration import classify_fibers, standard_family
from k3quartic.fields import gaussian_field
from k3quartic.lattices import Obstructed, RealizationVector, tn_gram, tn_search
from k3quartic.moduli import cayley, inverse_cayley, m_adj, m_mul, membership, period_point, su11_samples
from k3quartic.multipoly import MultiPoly, QuotientContext
from k3quartic.polynomials import Poly, poly_gcd, squarefree_decompose


# -- polynomial factor bookkeeping --------------------------------------------


@st.composite
def _polys(draw, max_degree=3):
    deg = draw(st.integers(0, max_degree))
    coeffs = {deg: Fraction(draw(st.integers(1, 4)))}
    for e in range(deg):
        c = draw(st.integers(-4, 4))
        if c:
            coeffs[e] = Fraction(c)
    return Poly("t", coeffs)


@given(st.lists(st.tuples(_polys(), st.integers(1, 3)), min_size=1, max_size=3))
@settings(max_examples=80, deadline=None)
def test_squarefree_decomposition_round_trips(factors):
    p = Poly("t", {0: Fraction(1)})
    for f, m in factors:
        p = p * f ** m
    unit, parts = squarefree_decompose(p)
    recomposed = Poly("t", {0: unit})
    for f, m in parts:
        recomposed = recomposed * f ** m
    assert recomposed == p


@given(st.lists(st.tuples(_polys(), st.integers(1, 3)), min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_squarefree_parts_are_monic_squarefree_coprime(factors):
    p = Poly("t", {0: Fraction(1)})
    for f, m in factors:
        p = p * f ** m
    _, parts = squarefree_decompose(p)
    mults = [m for _, m in parts]
    assert mults == sorted(mults) and len(set(mults)) == len(mults)
    for f, _ in parts:
        assert f.leading_coefficient() == 1
        assert poly_gcd(f, f.derivative()).degree == 0
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            assert poly_gcd(parts[i][0], parts[j][0]).degree == 0


# -- quotient-ring normalization ----------------------------------------------

_QVARS = ("r", "tau")
_QCTX = QuotientContext(
    _QVARS,
    [("tau", 2, MultiPoly.gen(_QVARS, "r") ** 3 - MultiPoly.gen(_QVARS, "r"))])


@st.composite
def _multipolys(draw):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, 5), st.integers(0, 6)),
        st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool),
        min_size=1, max_size=6))
    return MultiPoly(_QVARS, dict(terms))


@given(_multipolys())
@settings(max_examples=80, deadline=None)
def test_quotient_reduce_is_idempotent(mp):
    reduced = _QCTX.reduce(mp)
    assert _QCTX.reduce(reduced) == reduced
    assert reduced.degree_in("tau") <= 1


@given(_multipolys(), _multipolys())
@settings(max_examples=60, deadline=None)
def test_quotient_reduce_respects_products(a, b):
    direct = _QCTX.reduce(a * b)
    staged = _QCTX.reduce(_QCTX.reduce(a) * _QCTX.reduce(b))
    assert direct == staged


# -- fiber classification under fourth-power twists ----------------------------


def test_classification_survives_fourth_power_twists():
    rng = random.Random(41)
    for _ in range(50):
        alpha = Fraction(rng.randint(2, 60), rng.randint(1, 24))
        if alpha == 1:
            alpha += 1
        f = standard_family(alpha).f
        base = classify_fibers(f)
        s4 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9)) ** 4
        scaled = classify_fibers(Poly(f.var, {e: c * s4 for e, c in f.coeffs.items()}))
        assert scaled.type_multiset() == base.type_multiset()
        assert scaled.total_euler == base.total_euler == 24


# -- the group law on a rank-one curve ----------------------------------------

_A4 = Fraction(-36)          # v^2 = u^3 - 36 u, generator (-3, 9), 2-torsion (0, 0)


def _point_pool():
    gen = (Fraction(-3), Fraction(9))
    pool = [EC_INFINITY, (Fraction(0), Fraction(0))]
    acc = gen
    for _ in range(5):
        pool.append(acc)
        pool.append(ec_neg(acc))
        acc = ec_add(acc, gen, _A4)
    pool.append(ec_add(pool[1], gen, _A4))
    return pool


_POOL = _point_pool()


def test_pool_points_lie_on_the_curve():
    assert all(on_curve(p, _A4) for p in _POOL)


@given(st.integers(0, len(_POOL) - 1), st.integers(0, len(_POOL) - 1),
       st.integers(0, len(_POOL) - 1))
@settings(max_examples=100, deadline=None)
def test_ec_add_is_associative(i, j, k):
    a, b, c = _POOL[i], _POOL[j], _POOL[k]
    assert ec_add(ec_add(a, b, _A4), c, _A4) == ec_add(a, ec_add(b, c, _A4), _A4)


@given(st.integers(0, len(_POOL) - 1), st.integers(0, len(_POOL) - 1))
@settings(max_examples=60, deadline=None)
def test_ec_add_commutes_and_inverts(i, j):
    a, b = _POOL[i], _POOL[j]
    assert ec_add(a, b, _A4) == ec_add(b, a, _A4)
    assert ec_add(a, ec_neg(a), _A4) is EC_INFINITY
    assert ec_add(a, EC_INFINITY, _A4) == a


# -- splitting verdicts under reparametrization --------------------------------


def _affine_substitute(p, a, b):
    image = Poly(p.var, {1: a, 0: b})
    out = Poly(p.var, {})
    for e, c in p.coeffs.items():
        out = out + c * image ** e
    return out


def _moved(param, a, b):
    return Parametrization(
        _affine_substitute(param.x, a, b),
        _affine_substitute(param.y, a, b),
        _affine_substitute(param.z, a, b),
        name="reparametrized")


def test_splitting_verdict_survives_affine_reparametrization():
    rng = random.Random(43)
    builtins = [SPLIT_PARAM_SEXTIC, SPLIT_PARAM_QUARTIC]
    base_verdicts = [fourth_power_test(p) for p in builtins]
    done = 0
    while done < 50:
        if done < 10:
            param, base = builtins[done % 2], base_verdicts[done % 2]
        else:
            param = Parametrization(
                Poly("r", {0: Fraction(rng.randint(1, 9))}),
                Poly("r", {1: Fraction(rng.randint(1, 5)), 0: Fraction(rng.randint(-4, 4))}),
                Poly("r", {2: Fraction(rng.randint(1, 3)), 0: Fraction(rng.randint(1, 6))}),
                name="random probe")
            base = fourth_power_test(param)
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 6), rng.randint(1, 4))
        b = Fraction(rng.randint(-5, 5))
        moved = fourth_power_test(_moved(param, a, b))
        assert type(moved) is type(base)
        if isinstance(base, CoverSplits):
            assert tuple(moved.profile) == tuple(base.profile)
            assert moved.degree_mod_4 == base.degree_mod_4
            assert len(moved.places) == len(base.places)
        done += 1


def test_splitting_survives_common_coordinate_rescaling():
    # multiplying all three coordinates by one polynomial scales the
    # composite by its fourth power: the verdict stays Splits and the new
    # factor shows up with multiplicity divisible by 4
    scale = Poly("r", {2: Fraction(1), 0: Fraction(1)})
    base = fourth_power_test(SPLIT_PARAM_QUARTIC)
    moved = fourth_power_test(Parametrization(
        SPLIT_PARAM_QUARTIC.x * scale,
        SPLIT_PARAM_QUARTIC.y * scale,
        SPLIT_PARAM_QUARTIC.z * scale,
        name="rescaled"))
    assert isinstance(moved, CoverSplits)
    assert len(moved.places) == len(base.places) + 1
    extra = [m for p, m in moved.places if p == scale.monic()]
    assert extra and extra[0] % 4 == 0


# -- transcendental sweep bucketing --------------------------------------------


def test_tn_search_buckets_by_residue_mod_4():
    for n in range(1, 61):
        verdict = tn_search(n)
        if n % 4 == 2:
            assert isinstance(verdict, Obstructed)
        else:
            assert isinstance(verdict, RealizationVector)
            assert verdict.gcd == 1


@given(st.integers(1, 200))
@settings(max_examples=60, deadline=None)
def test_tn_gram_is_diagonal(n):
    g = tn_gram(n)
    assert g[0][1] == g[1][0] == 0
    assert g[0][0] == g[1][1] == 2 * n


# -- modular group closure and the unit ball -----------------------------------


def test_integral_samples_form_a_group_under_membership():
    samples = su11_samples(50, seed=7)
    for m in samples:
        assert membership(m, "G0")
        assert membership(m_adj(m), "G0")
    for a, b in zip(samples, samples[1:]):
        assert membership(m_mul(a, b), "G0")


def test_cayley_round_trip_on_fresh_samples():
    for m in su11_samples(50, seed=99):
        assert inverse_cayley(cayley(m)) == m


@given(st.fractions(min_value=-5, max_value=5, max_denominator=6),
       st.fractions(min_value=-5, max_value=5, max_denominator=6),
       st.fractions(min_value=-5, max_value=5, max_denominator=6),
       st.fractions(min_value=-5, max_value=5, max_denominator=6))
@settings(max_examples=80, deadline=None)
def test_period_point_verdict_matches_the_unit_ball(a, b, c, d):
    if a == 0 and b == 0:
        a = Fraction(1)
    G = gaussian_field()
    i = G.gen()
    z2 = G.from_rational(a) + G.from_rational(b) * i
    z4 = G.from_rational(c) + G.from_rational(d) * i
    pt = period_point(z2, z4)
    assert pt.ball_consistent
    gap = (a * a + b * b) - (c * c + d * d)
    expected = "inside" if gap > 0 else ("boundary" if gap == 0 else "outside")
    assert pt.verdict == expected
    assert pt.form_value == 4 * gap
