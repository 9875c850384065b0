"""Sparse univariate polynomials and rational functions over an exact field.

Coefficients are duck-typed: anything with +, -, *, /, ** and == against the
integers 0 and 1 works (Fractions, tower field elements, or rational functions
in another variable).  The zero polynomial has degree -inf so degree
comparisons behave without special-casing.

``RationalFunction`` keeps a reduced num/den pair with a monic denominator,
which makes equality structural.  Division of polynomials that does not come
out even lands there automatically via ``__truediv__``.
"""

import math
from fractions import Fraction

NEG_INF = float("-inf")

# types that outrank Poly/RationalFunction in binary-operator dispatch;
# multivariate layers register themselves here so `rf * multipoly` defers
_HIGHER = ()


def register_higher(*types):
    global _HIGHER
    _HIGHER = _HIGHER + types


def _is_scalar(x):
    return not isinstance(x, (Poly, RationalFunction))


class Poly:
    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs=None):
        self.var = var
        cleaned = {}
        if coeffs:
            for e, c in coeffs.items():
                if c == 0:
                    continue
                # ints become Fractions so scalar division stays exact
                cleaned[e] = Fraction(c) if isinstance(c, int) else c
        self.coeffs = cleaned

    # -- constructors --------------------------------------------------------

    @classmethod
    def x(cls, var):
        return cls(var, {1: 1})

    @classmethod
    def constant(cls, var, c):
        return cls(var, {0: c})

    @classmethod
    def from_list(cls, var, coeff_list):
        return cls(var, {e: c for e, c in enumerate(coeff_list)})

    # -- structure -------------------------------------------------------------

    @property
    def degree(self):
        return max(self.coeffs) if self.coeffs else NEG_INF

    @property
    def is_zero(self):
        return not self.coeffs

    def coeff(self, e):
        return self.coeffs.get(e, 0)

    def leading_coefficient(self):
        if not self.coeffs:
            return 0
        return self.coeffs[max(self.coeffs)]

    def monic(self):
        if self.is_zero:
            return self
        lead = self.leading_coefficient()
        if lead == 1:
            return self
        return self.map_coeffs(lambda c: c / lead)

    def map_coeffs(self, fn, var=None):
        return Poly(var or self.var, {e: fn(c) for e, c in self.coeffs.items()})

    def rename(self, var):
        return Poly(var, dict(self.coeffs))

    def coeff_list(self):
        """Dense list of coefficients from degree 0 upward (empty for zero)."""
        if self.is_zero:
            return []
        d = max(self.coeffs)
        return [self.coeffs.get(e, 0) for e in range(d + 1)]

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other):
        if isinstance(other, Poly):
            if other.var != self.var:
                raise TypeError(
                    "mixed polynomial variables %r and %r" % (self.var, other.var)
                )
            return other
        if isinstance(other, RationalFunction) or isinstance(other, _HIGHER):
            return None  # let the other side handle it
        return Poly.constant(self.var, other)

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.var, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            out[e] = out.get(e, 0) - c
        return Poly(self.var, out)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in o.coeffs.items():
                e = e1 + e2
                prod = c1 * c2
                if e in out:
                    out[e] = out[e] + prod
                else:
                    out[e] = prod
        return Poly(self.var, out)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(self.var, {e: -c for e, c in self.coeffs.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly.constant(self.var, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._check(other)
        if o is None or o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = dict(self.coeffs)
        db = o.degree
        lead = o.coeffs[db]
        quo = {}
        def deg(d):
            return max(d) if d else NEG_INF
        while deg(rem) >= db:
            e = max(rem)
            c = rem.pop(e)
            if c == 0:
                continue
            f = c / lead
            k = e - db
            quo[k] = quo.get(k, 0) + f
            for eo, co in o.coeffs.items():
                if eo == db:
                    continue
                t = eo + k
                rem[t] = rem.get(t, 0) - f * co
                if rem[t] == 0:
                    del rem[t]
        return Poly(self.var, quo), Poly(self.var, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.map_coeffs(lambda c: c / other)
        if isinstance(other, Poly):
            q, r = divmod(self, other)
            if r.is_zero:
                return q
            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return RationalFunction(o, self)

    def __call__(self, value):
        """Horner evaluation; works for scalars, polynomials, fractions."""
        if self.is_zero:
            return 0
        exps = sorted(self.coeffs, reverse=True)
        result = self.coeffs[exps[0]]
        prev = exps[0]
        for e in exps[1:]:
            result = result * value ** (prev - e) + self.coeffs[e]
            prev = e
        if prev > 0:
            result = result * value ** prev
        return result

    def derivative(self):
        return Poly(self.var, {e - 1: e * c for e, c in self.coeffs.items() if e >= 1})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, RationalFunction):
            return NotImplemented
        # scalar comparison
        if other == 0:
            return self.is_zero
        return self.degree <= 0 and self.coeff(0) == other

    def __bool__(self):
        return not self.is_zero

    def __hash__(self):
        return hash((self.var, tuple(sorted(self.coeffs.items(), key=lambda t: t[0]))))

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
                continue
            mono = self.var if e == 1 else "%s^%d" % (self.var, e)
            cs = str(c)
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                if any(ch in cs[1:] for ch in "+- ") :
                    cs = "(%s)" % cs
                parts.append("%s*%s" % (cs, mono))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def poly_gcd(a, b):
    """Monic gcd by the Euclidean algorithm over a coefficient field."""
    if a.var != b.var:
        raise TypeError("gcd of polynomials in different variables")
    p, q = a, b
    while not q.is_zero:
        r = p % q
        p, q = q, r.monic()
    return p.monic()


def squarefree_decompose(p):
    """Yun's algorithm over characteristic zero.

    Returns (unit, [(monic factor, multiplicity), ...]) with the factors
    squarefree, pairwise coprime, and the product of factor^mult times the
    unit giving back p.  Factors come out in increasing multiplicity order.
    """
    if p.is_zero:
        raise ValueError("squarefree decomposition of the zero polynomial")
    unit = p.leading_coefficient()
    if p.degree == 0:
        return unit, []
    p = p.monic()
    dp = p.derivative()
    g = poly_gcd(p, dp)
    out = []
    c = p // g
    d = dp // g - c.derivative()
    i = 1
    while c.degree > 0:
        f = poly_gcd(c, d)
        if f.degree > 0:
            out.append((f, i))
        c2 = c // f
        d = d // f - c2.derivative()
        c = c2
        i += 1
    return unit, out


def scalar_nth_root(c, n):
    """Exact n-th root of a scalar, or None.

    Fractions get integer root extraction on numerator and denominator;
    anything equal to 0 or 1 is immediate.  Other scalar types are only
    handled through an exact rational value.
    """
    if c == 0:
        return type(c)(0) if isinstance(c, Fraction) else 0
    if c == 1:
        return 1
    q = None
    if isinstance(c, (int, Fraction)):
        q = Fraction(c)
    else:
        rat = getattr(c, "rational", None)
        if rat is not None:
            try:
                q = rat()
            except (ValueError, AttributeError):
                return None
    if q is None:
        return None
    sign = 1
    if q < 0:
        if n % 2 == 0:
            return None
        sign = -1
        q = -q

    def iroot(m):
        if m == 1:
            return 1
        r = round(m ** (1.0 / n))
        for cand in (r - 1, r, r + 1):
            if cand > 0 and cand ** n == m:
                return cand
        # float guess can be off for big m; fall back to integer bisection
        lo, hi = 1, m
        while lo <= hi:
            mid = (lo + hi) // 2
            v = mid ** n
            if v == m:
                return mid
            if v < m:
                lo = mid + 1
            else:
                hi = mid - 1
        return None

    rn = iroot(q.numerator)
    rd = iroot(q.denominator)
    if rn is None or rd is None:
        return None
    return Fraction(sign * rn, rd)


def poly_nth_root(p, n):
    """Exact n-th root of a polynomial, or None if there is none."""
    if n <= 0:
        raise ValueError("root index must be positive")
    if n == 1:
        return p
    if p.is_zero:
        return p
    unit, factors = squarefree_decompose(p)
    u = scalar_nth_root(unit, n)
    if u is None:
        return None
    root = Poly.constant(p.var, 1) * u
    for f, m in factors:
        if m % n:
            return None
        root = root * f ** (m // n)
    return root


def _int_divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p):
    """All rational roots with multiplicities: [(Fraction root, mult)].

    Requires Fraction (or int) coefficients.  The classic numerator/denominator
    divisor test, then multiplicity by repeated division.
    """
    if p.is_zero:
        raise ValueError("every rational is a root of the zero polynomial")
    coeffs = {e: Fraction(c) for e, c in p.coeffs.items()}
    # clear denominators
    mult = 1
    for c in coeffs.values():
        den = c.denominator
        mult = mult * den // math.gcd(mult, den)
    ints = {e: int(c * mult) for e, c in coeffs.items()}
    lo = min(ints)
    # factor out x^lo: root 0 with multiplicity lo
    out = []
    if lo > 0:
        out.append((Fraction(0), lo))
        ints = {e - lo: c for e, c in ints.items()}
    a0 = ints[0]
    an = ints[max(ints)]
    seen = set()
    cands = []
    for pn in _int_divisors(a0):
        for pd in _int_divisors(an):
            for s in (1, -1):
                q = Fraction(s * pn, pd)
                if q not in seen:
                    seen.add(q)
                    cands.append(q)
    work = Poly(p.var, {e: Fraction(c) for e, c in ints.items()})
    for r in cands:
        if work.degree <= 0:
            break
        m = 0
        while work.degree > 0 and work(r) == 0:
            work = work // Poly(p.var, {1: Fraction(1), 0: -r})
            m += 1
        if m:
            out.append((r, m))
    return out


def certified_factors(p):
    """Factor a squarefree rational polynomial as far as cheap certificates go.

    Returns (factors, residual) where factors is a list of monic polynomials
    that are certified irreducible over Q (linear always; quadratic/cubic via
    the no-rational-root test) and residual is None or a monic polynomial of
    degree >= 4 that carries no rational root but is not certified.
    """
    if p.degree <= 0:
        return [], None
    work = p.monic()
    factors = []
    for r, m in rational_roots(work):
        lin = Poly(p.var, {1: Fraction(1), 0: -r})
        for _ in range(m):
            factors.append(lin)
            work = work // lin
    if work.degree <= 0:
        return factors, None
    if work.degree <= 3:
        # no rational root and degree 2 or 3: irreducible over Q
        factors.append(work)
        return factors, None
    return factors, work


class RationalFunction:
    """Quotient of two polynomials in one variable, kept reduced.

    The denominator is monic and coprime to the numerator, so equality is
    literal structural equality of the pairs.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if isinstance(num, RationalFunction):
            if den is not None:
                raise TypeError("pass polynomials, not fractions")
            num, den = num.num, num.den
        if not isinstance(num, Poly):
            raise TypeError("numerator must be a Poly")
        if den is None:
            den = Poly.constant(num.var, 1)
        elif not isinstance(den, Poly):
            den = Poly.constant(num.var, den)
        if num.var != den.var:
            raise TypeError("numerator and denominator variables differ")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero:
                den = Poly.constant(num.var, 1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num // g
                    den = den // g
                lead = den.leading_coefficient()
                if lead != 1:
                    num = num.map_coeffs(lambda c: c / lead)
                    den = den.map_coeffs(lambda c: c / lead)
        self.num = num
        self.den = den

    @classmethod
    def from_value(cls, var, value):
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Poly):
            return cls(value)
        return cls(Poly.constant(var, value))

    @property
    def var(self):
        return self.num.var

    @property
    def is_polynomial(self):
        return self.den.degree == 0

    def as_poly(self):
        if not self.is_polynomial:
            raise ValueError("%r is not polynomial" % self)
        return self.num

    @property
    def is_zero(self):
        return self.num.is_zero

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.var != self.var:
                raise TypeError("mixed variables %r and %r" % (self.var, other.var))
            return other
        if isinstance(other, Poly):
            if other.var != self.var:
                raise TypeError("mixed variables %r and %r" % (self.var, other.var))
            return RationalFunction(other)
        if isinstance(other, _HIGHER):
            return None
        return RationalFunction(Poly.constant(self.var, other))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of zero")
            base = RationalFunction(self.den, self.num)
            n = -n
        else:
            base = self
        return RationalFunction(base.num ** n, base.den ** n)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __bool__(self):
        return not self.is_zero

    def __hash__(self):
        return hash((self.num, self.den))

    def substitute(self, value):
        """Evaluate at a scalar, polynomial, or rational function."""
        return self.num(value) / self.den(value)

    def derivative(self):
        n = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RationalFunction(n, self.den * self.den)

    def map_coeffs(self, fn, var=None):
        return RationalFunction(self.num.map_coeffs(fn, var), self.den.map_coeffs(fn, var))

    def __repr__(self):
        if self.is_polynomial:
            return repr(self.num)
        return "(%s)/(%s)" % (self.num, self.den)
