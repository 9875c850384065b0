"""Numeric embeddings and period-lattice identification.

Exact data goes in (rational root triples, tower-field elements with declared
numeric generators); what comes out is a period ratio with a stated error
bound and, from that, an integer quadratic relation detected at a threshold
far above the noise floor, so a positive identification is never an artifact
of rounding.  Everything numeric runs through mpmath at a caller-chosen
precision with guard bits.
"""

import math
from collections import namedtuple
from fractions import Fraction

import mpmath
from mpmath import mp

from .fields import FieldElement
from .polynomials import Poly, rational_roots

GUARD_BITS = 16


def _gen_value(desc):
    kind = desc[0]
    if kind == "root_of_unity":
        return mpmath.expjpi(mpmath.mpf(2) / desc[1])
    if kind == "sqrt":
        q = Fraction(desc[1])
        return mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator)
    if kind == "nth_root":
        q, n = Fraction(desc[1]), desc[2]
        return mpmath.root(mpmath.mpf(q.numerator) / q.denominator, n)
    raise ValueError("unknown numeric generator %r" % (desc,))


def _frac_to_mp(q):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def embed(x, precision_bits=128):
    """Complex value of a rational or tower-field element.

    Field contexts carry numeric descriptors for their generators; an element
    of a context without them cannot be embedded.
    """
    with mp.workprec(precision_bits + GUARD_BITS):
        if isinstance(x, (int, Fraction)):
            return _frac_to_mp(x)
        if not isinstance(x, FieldElement):
            raise TypeError("cannot embed %r" % (x,))
        ctx = x.ctx
        if ctx.gen_numeric is None:
            raise ValueError("context %s declares no numeric generators" % ctx.label)
        gens = [_gen_value(d) for d in ctx.gen_numeric]

        def ev(raw, level):
            if level == 0:
                return _frac_to_mp(raw)
            g = gens[level - 1]
            acc = mpmath.mpf(0)
            for c in reversed(raw):
                acc = acc * g + ev(c, level - 1)
            return acc

        return ev(x.coords(), ctx.height)


def _real_embed(x, precision_bits):
    v = embed(x, precision_bits)
    if isinstance(v, mpmath.mpc):
        if abs(v.imag) > mpmath.mpf(2) ** (8 - precision_bits):
            raise ValueError("root %r does not embed as a real number" % (x,))
        v = v.real
    return v


PeriodRatio = namedtuple("PeriodRatio", ["tau", "error_bound"])


def period_ratio_numeric(e1, e2, e3, precision_bits=128):
    """tau of the lattice of y^2 = (x-e1)(x-e2)(x-e3), distinct real roots.

    Uses the arithmetic-geometric mean on the root gaps; with the roots sorted
    so e1 > e2 > e3, tau = i agm(a, b)/agm(a, c) for a, b, c the square roots
    of e1-e3, e1-e2, e2-e3.  The returned error bound 2^(8-precision_bits)
    dominates the AGM truncation error at the working precision.
    """
    with mp.workprec(precision_bits + GUARD_BITS):
        vals = sorted((_real_embed(e, precision_bits) for e in (e1, e2, e3)),
                      reverse=True)
        r1, r2, r3 = vals
        if r1 == r2 or r2 == r3:
            raise ValueError("roots must be distinct")
        a = mpmath.sqrt(r1 - r3)
        b = mpmath.sqrt(r1 - r2)
        c = mpmath.sqrt(r2 - r3)
        tau = mpmath.mpc(0, 1) * mpmath.agm(a, b) / mpmath.agm(a, c)
    return PeriodRatio(tau, mpmath.mpf(2) ** (8 - precision_bits))


def tau_from_cubic(rhs, precision_bits=128):
    """Period ratio of v^2 = rhs(u) when the monic cubic has 3 rational roots."""
    if rhs.degree != 3 or rhs.leading_coefficient() != 1:
        raise ValueError("rhs must be a monic cubic")
    roots = []
    for r, m in rational_roots(rhs):
        roots.extend([r] * m)
    if len(roots) != 3:
        raise ValueError("cubic does not split rationally: roots %r" % roots)
    return period_ratio_numeric(*roots, precision_bits=precision_bits)


class IsogenousToE:
    """tau satisfies a primitive integer relation with discriminant -4 m^2."""

    __slots__ = ("conductor", "witness", "residual")

    def __init__(self, conductor, witness, residual):
        self.conductor = conductor
        self.witness = witness
        self.residual = residual

    def __eq__(self, other):
        if isinstance(other, IsogenousToE):
            return self.conductor == other.conductor
        return NotImplemented

    def __repr__(self):
        return "IsogenousToE(conductor=%d, witness=%r)" % (self.conductor, self.witness)


class NotDetected:
    __slots__ = ("reason", "witness")

    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness

    def __repr__(self):
        return "NotDetected(%s)" % self.reason


class Inconclusive:
    __slots__ = ("detail",)

    def __init__(self, detail):
        self.detail = detail

    def __repr__(self):
        return "Inconclusive(%s)" % self.detail


def cm_isogeny_check(tau, max_conductor=10, precision_bits=128):
    """Look for a primitive integer relation a tau^2 + b tau + c = 0, a >= 1.

    Acceptance threshold 2^(-precision_bits/2) sits far above the noise floor
    of a tau computed at precision_bits, and far below any spurious residual
    for small coefficients, so a hit below it is structural.  Residuals in the
    band up to 2^(-precision_bits/4) come back Inconclusive rather than as a
    detection.  Discriminant -4 m^2 identifies the conductor-m case.
    """
    if max_conductor < 1:
        raise ValueError("max_conductor must be >= 1")
    with mp.workprec(precision_bits + GUARD_BITS):
        tau = mpmath.mpc(tau)
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half plane")
        accept = mpmath.mpf(2) ** (-(precision_bits // 2))
        margin = mpmath.mpf(2) ** (-(precision_bits // 4))
        best = None
        for a in range(1, max_conductor + 1):
            b = int(mpmath.nint(-2 * a * tau.real))
            c = int(mpmath.nint(a * abs(tau) ** 2))
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            r = abs(a * tau ** 2 + b * tau + c)
            if best is None or r < best[0]:
                best = (r, (a, b, c))
        if best is None:
            return NotDetected("no primitive candidate up to conductor %d" % max_conductor)
        residual, (a, b, c) = best
        if residual >= accept:
            if residual < margin:
                return Inconclusive("best residual %s for %r sits in the margin band"
                                    % (mpmath.nstr(residual, 8), (a, b, c)))
            return NotDetected("no integer relation: best residual %s"
                               % mpmath.nstr(residual, 8), witness=(a, b, c))
        disc = b * b - 4 * a * c
        if disc >= 0:
            return NotDetected("relation has nonnegative discriminant %d" % disc,
                               witness=(a, b, c))
        if disc % 4 == 0:
            m2 = -disc // 4
            m = math.isqrt(m2)
            if m * m == m2:
                return IsogenousToE(m, (a, b, c), float(residual))
        return NotDetected("CM discriminant %d is not -4 m^2" % disc,
                           witness=(a, b, c))
