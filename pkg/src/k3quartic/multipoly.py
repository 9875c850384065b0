"""Multivariate polynomials and quotient rings by monomial-headed relations.

``MultiPoly`` is a sparse exponent-vector/coefficient map over a fixed
variable tuple.  All operands of a binary operation must share that tuple;
scalars coerce.  ``QuotientContext`` rewrites powers of designated head
variables by lower-order replacements (think tau^2 -> h(rho)), giving enough
of a quotient ring to verify identities on curves and covers exactly.
``QuotientFraction`` adds formal division with equality tested by
cross-multiplication, which is sound because these quotients are integral
domains for the relations we use.
"""

from fractions import Fraction

from . import polynomials as _polynomials


def _is_scalar(x):
    return not isinstance(x, (MultiPoly, QuotientFraction))


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        cleaned = {}
        if terms:
            for exps, c in terms.items():
                if c == 0:
                    continue
                if len(exps) != len(self.vars):
                    raise ValueError("exponent vector length mismatch")
                # ints become Fractions so scalar division stays exact
                cleaned[tuple(exps)] = Fraction(c) if isinstance(c, int) else c
        self.terms = cleaned

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def const(cls, vars, c):
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def gen(cls, vars, name, power=1):
        vars = tuple(vars)
        if name not in vars:
            raise ValueError("%r is not one of %r" % (name, vars))
        e = [0] * len(vars)
        e[vars.index(name)] = power
        return cls(vars, {tuple(e): 1})

    @classmethod
    def from_poly(cls, p, vars):
        vars = tuple(vars)
        i = vars.index(p.var)
        terms = {}
        for e, c in p.coeffs.items():
            ev = [0] * len(vars)
            ev[i] = e
            terms[tuple(ev)] = c
        return cls(vars, terms)

    # -- structure --------------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def degree_in(self, name):
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def constant_value(self):
        if self.is_zero:
            return 0
        z = (0,) * len(self.vars)
        if set(self.terms) != {z}:
            raise ValueError("%r is not constant" % self)
        return self.terms[z]

    def uses(self, name):
        i = self.vars.index(name)
        return any(e[i] for e in self.terms)

    def to_poly(self, name, poly_cls):
        """Collapse to a univariate polynomial in `name` (others must be absent)."""
        i = self.vars.index(name)
        coeffs = {}
        for e, c in self.terms.items():
            if any(x for j, x in enumerate(e) if j != i):
                raise ValueError("extra variables present, cannot collapse to %s" % name)
            coeffs[e[i]] = c
        return poly_cls(name, coeffs)

    def map_coeffs(self, fn):
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    # -- arithmetic ---------------------------------------------------------------

    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise TypeError("variable tuples differ: %r vs %r" % (self.vars, other.vars))
            return other
        if isinstance(other, QuotientFraction):
            return None
        return MultiPoly.const(self.vars, other)

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) - c
        return MultiPoly(self.vars, out)

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
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if e in out:
                    out[e] = out[e] + prod
                else:
                    out[e] = prod
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.map_coeffs(lambda c: c / other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, QuotientFraction):
            return NotImplemented
        try:
            o = self._check(other)
        except TypeError:
            return NotImplemented
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __bool__(self):
        return not self.is_zero

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    # -- substitution and division ---------------------------------------------

    def substitute(self, mapping):
        """Polynomial substitution; values are MultiPolys over the same vars
        or scalars.  Unmapped variables stay themselves."""
        vals = {}
        for name, v in mapping.items():
            i = self.vars.index(name)
            if _is_scalar(v):
                v = MultiPoly.const(self.vars, v)
            elif v.vars != self.vars:
                raise TypeError("substitution value over wrong variables")
            vals[i] = v
        out = MultiPoly.zero(self.vars)
        powcache = {}
        for e, c in self.terms.items():
            base_exp = list(e)
            factor = MultiPoly.const(self.vars, c)
            for i, v in vals.items():
                k = e[i]
                base_exp[i] = 0
                if k:
                    key = (i, k)
                    if key not in powcache:
                        powcache[key] = v ** k
                    factor = factor * powcache[key]
            mono = MultiPoly(self.vars, {tuple(base_exp): 1})
            out = out + factor * mono
        return out

    def derivative(self, name):
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            e2 = list(e)
            e2[i] = k - 1
            out[tuple(e2)] = k * c
        return MultiPoly(self.vars, out)

    def try_exact_div(self, divisor):
        """self / divisor when the division is exact, else None.

        Multivariate long division by a single divisor under lex order on
        the variable tuple; exactness means zero remainder.
        """
        d = self._check(divisor)
        if d is None or d.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        lead = max(d.terms)  # lex-largest exponent vector
        lc = d.terms[lead]
        rem = dict(self.terms)
        quo = {}
        while rem:
            e = max(rem)
            c = rem.pop(e)
            if c == 0:
                continue
            diff = tuple(a - b for a, b in zip(e, lead))
            if any(x < 0 for x in diff):
                return None  # remainder is nonzero
            f = c / lc
            quo[diff] = quo.get(diff, 0) + f
            for ed, cd in d.terms.items():
                if ed == lead:
                    continue
                t = tuple(a + b for a, b in zip(diff, ed))
                rem[t] = rem.get(t, 0) - f * cd
                if rem[t] == 0:
                    del rem[t]
        return MultiPoly(self.vars, quo)

    def evaluate(self, assignment):
        """Full evaluation; assignment maps every used variable to a scalar."""
        out = 0
        for e, c in self.terms.items():
            term = c
            for name, k in zip(self.vars, e):
                if k:
                    term = term * assignment[name] ** k
            out = out + term
        return out

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else "%s^%d" % (v, k))
                for v, k in zip(self.vars, e)
                if k
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                if any(ch in cs[1:] for ch in "+- "):
                    cs = "(%s)" % cs
                parts.append("%s*%s" % (cs, mono))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


class QuotientContext:
    """A polynomial ring modulo relations head^exp = replacement.

    Heads must be distinct variables and no replacement may involve any head
    variable, so rewriting strictly eliminates high head powers and a single
    pass per relation normalizes completely.
    """

    __slots__ = ("vars", "relations")

    def __init__(self, vars, relations):
        self.vars = tuple(vars)
        heads = set()
        rels = []
        for head, exp, rhs in relations:
            if head not in self.vars:
                raise ValueError("head %r not a variable" % head)
            if head in heads:
                raise ValueError("duplicate head %r" % head)
            if exp < 2:
                raise ValueError("relation exponent must be >= 2")
            heads.add(head)
            if _is_scalar(rhs):
                rhs = MultiPoly.const(self.vars, rhs)
            if rhs.vars != self.vars:
                raise TypeError("replacement over wrong variables")
            rels.append((head, exp, rhs))
        for _, _, rhs in rels:
            for h in heads:
                if rhs.uses(h):
                    raise ValueError("replacement for a relation mentions head %r" % h)
        self.relations = tuple(rels)

    def reduce(self, mp):
        if _is_scalar(mp):
            return MultiPoly.const(self.vars, mp)
        if mp.vars != self.vars:
            raise TypeError("value over wrong variables")
        for head, exp, rhs in self.relations:
            i = self.vars.index(head)
            if mp.degree_in(head) < exp:
                continue
            powcache = {1: rhs}
            out = {}
            for e, c in mp.terms.items():
                k = e[i]
                if k < exp:
                    out[e] = out.get(e, 0) + c
                    continue
                q, r = divmod(k, exp)
                if q not in powcache:
                    powcache[q] = rhs ** q
                base = list(e)
                base[i] = r
                piece = powcache[q] * MultiPoly(self.vars, {tuple(base): c})
                for e2, c2 in piece.terms.items():
                    out[e2] = out.get(e2, 0) + c2
            mp = MultiPoly(self.vars, out)
        return mp

    def is_zero(self, mp):
        return self.reduce(mp).is_zero

    def __repr__(self):
        rels = ", ".join("%s^%d -> %s" % (h, e, r) for h, e, r in self.relations)
        return "QuotientContext(%s | %s)" % (",".join(self.vars), rels)


class QuotientFraction:
    """num/den in a quotient ring, with equality by cross-multiplication."""

    __slots__ = ("qctx", "num", "den")

    def __init__(self, qctx, num, den=None):
        self.qctx = qctx
        if _is_scalar(num):
            num = MultiPoly.const(qctx.vars, num)
        if den is None:
            den = MultiPoly.const(qctx.vars, 1)
        elif _is_scalar(den):
            den = MultiPoly.const(qctx.vars, den)
        num = qctx.reduce(num)
        den = qctx.reduce(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator in quotient ring")
        if num.is_zero:
            den = MultiPoly.const(qctx.vars, 1)
        self.num = num
        self.den = den

    @classmethod
    def gen(cls, qctx, name, power=1):
        return cls(qctx, MultiPoly.gen(qctx.vars, name, power))

    def _lift(self, other):
        if isinstance(other, QuotientFraction):
            if other.qctx is not self.qctx and other.qctx.vars != self.qctx.vars:
                raise TypeError("mixed quotient contexts")
            return other
        return QuotientFraction(self.qctx, other)

    def __add__(self, other):
        o = self._lift(other)
        return QuotientFraction(
            self.qctx, self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return QuotientFraction(
            self.qctx, self.num * o.den - o.num * self.den, self.den * o.den
        )

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuotientFraction(self.qctx, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero:
            raise ZeroDivisionError("division by zero in quotient ring")
        return QuotientFraction(self.qctx, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __neg__(self):
        return QuotientFraction(self.qctx, -self.num, self.den)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.num.is_zero:
                raise ZeroDivisionError("negative power of zero")
            return QuotientFraction(self.qctx, self.den ** (-n), self.num ** (-n))
        return QuotientFraction(self.qctx, self.num ** n, self.den ** n)

    @property
    def is_zero(self):
        return self.num.is_zero

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self.qctx.is_zero(self.num * o.den - o.num * self.den)

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        if self.den == MultiPoly.const(self.qctx.vars, 1):
            return repr(self.num)
        return "(%s)/(%s)" % (self.num, self.den)


def quotient_reduce(e, ctx):
    """Normal form of a MultiPoly under the context's relations."""
    return ctx.reduce(e)


# Poly/RationalFunction defer binary ops to these types (they may appear as
# coefficients of neither, but multivariate values may carry univariate
# scalars, so dispatch must flow upward)
_polynomials.register_higher(MultiPoly, QuotientFraction)
