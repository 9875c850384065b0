"""Exact arithmetic in small algebraic extension towers over Q.

A ``FieldContext`` fixes a tower Q = K0 < K1 < K2 of at most two simple
extensions, each given by a monic minimal polynomial over the level below.
Elements are stored as nested coefficient tuples:

  * level 0 value: a ``Fraction``
  * level k value: a tuple of level k-1 values of length deg(m_k)

so an element of Q(t1)(t2) is a tuple (len d2) of tuples (len d1) of
Fractions.  All values are immutable; arithmetic never mutates.

Minimal polynomials are *assumed* irreducible.  The assumption is checked
lazily: inversion runs an extended Euclid against the minimal polynomial,
and a nontrivial gcd is reported as a ``ReducibilityError`` carrying the
discovered factor, never silently wrong arithmetic.

Contexts may declare the field automorphism induced by complex conjugation
(images of the generators) and a numeric descriptor per generator so that
elements can be embedded into arbitrary-precision complex numbers elsewhere.
"""

from fractions import Fraction
from functools import lru_cache


class ReducibilityError(ArithmeticError):
    """A declared minimal polynomial turned out to be reducible.

    ``factor`` holds the coefficients (low to high, values one level down)
    of a nontrivial monic divisor discovered during inversion.
    """

    def __init__(self, level, factor):
        self.level = level
        self.factor = factor
        super().__init__(
            "minimal polynomial at level %d is reducible; found factor of degree %d"
            % (level, len(factor) - 1)
        )


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected int or Fraction, got %r" % (x,))


class FieldContext:
    """A fixed tower of at most two simple extensions of Q."""

    __slots__ = (
        "minpolys",
        "names",
        "label",
        "height",
        "dims",
        "degree",
        "_redpow",
        "conj_images",
        "gen_numeric",
        "_key",
    )

    def __init__(self, minpolys, names, label=None, conj_images=None, gen_numeric=None):
        if not 1 <= len(minpolys) <= 2:
            raise ValueError("tower height must be 1 or 2")
        if len(names) != len(minpolys):
            raise ValueError("one generator name per extension")
        self.height = len(minpolys)
        self.names = tuple(names)
        self.label = label or "Q(%s)" % ",".join(names)

        # normalize minpoly storage: minpolys[k] is a tuple of level-k values
        # (coefficients low to high, length deg+1, leading coefficient one)
        m1 = tuple(_as_fraction(c) for c in minpolys[0])
        if len(m1) < 3 or m1[-1] != 1:
            raise ValueError("level-1 minimal polynomial must be monic of degree >= 2")
        stored = [m1]
        self.dims = [len(m1) - 1]
        if self.height == 2:
            d1 = self.dims[0]
            m2 = []
            for c in minpolys[1]:
                m2.append(self._lift_raw(c, d1))
            m2 = tuple(m2)
            if len(m2) < 3 or m2[-1] != self._one_at(1):
                raise ValueError("level-2 minimal polynomial must be monic of degree >= 2")
            stored.append(m2)
            self.dims.append(len(m2) - 1)
        self.minpolys = tuple(stored)
        self.degree = 1
        for d in self.dims:
            self.degree *= d
        self._key = (self.minpolys, self.names)

        # reduction table: powers gen_k^j for j = d..2d-2, per level
        self._redpow = []
        for k in range(1, self.height + 1):
            self._redpow.append(self._power_table(k))

        self.conj_images = None
        if conj_images is not None:
            # each image is a rational coordinate vector in that level's generator
            imgs = []
            for lvl, img in enumerate(conj_images):
                d = self.dims[lvl]
                vec = [self._rat_at(c, lvl) for c in img]
                vec += [self._zero_at(lvl)] * (d - len(vec))
                imgs.append(FieldElement(self, self._to_top(tuple(vec), lvl + 1)))
            self.conj_images = tuple(imgs)
        self.gen_numeric = tuple(gen_numeric) if gen_numeric is not None else None

    # -- raw-value plumbing ------------------------------------------------

    def _lift_raw(self, c, d1):
        """Interpret c (int/Fraction or length-d1 sequence) as a level-1 value."""
        if isinstance(c, (int, Fraction)):
            v = [Fraction(0)] * d1
            v[0] = _as_fraction(c)
            return tuple(v)
        v = [_as_fraction(x) for x in c]
        if len(v) != d1:
            raise ValueError("level-1 coefficient of wrong length")
        return tuple(v)

    def _zero_at(self, level):
        if level == 0:
            return Fraction(0)
        return tuple(self._zero_at(level - 1) for _ in range(self.dims[level - 1]))

    def _one_at(self, level):
        if level == 0:
            return Fraction(1)
        inner = [self._zero_at(level - 1)] * self.dims[level - 1]
        inner[0] = self._one_at(level - 1)
        return tuple(inner)

    def _rat_at(self, q, level):
        if level == 0:
            return _as_fraction(q)
        inner = [self._zero_at(level - 1)] * self.dims[level - 1]
        inner[0] = self._rat_at(q, level - 1)
        return tuple(inner)

    def _is_zero(self, a, level):
        if level == 0:
            return a == 0
        return all(self._is_zero(x, level - 1) for x in a)

    def _add(self, a, b, level):
        if level == 0:
            return a + b
        return tuple(self._add(x, y, level - 1) for x, y in zip(a, b))

    def _neg(self, a, level):
        if level == 0:
            return -a
        return tuple(self._neg(x, level - 1) for x in a)

    def _sub(self, a, b, level):
        if level == 0:
            return a - b
        return tuple(self._sub(x, y, level - 1) for x, y in zip(a, b))

    def _mul(self, a, b, level):
        if level == 0:
            return a * b
        d = self.dims[level - 1]
        lo = level - 1
        conv = [self._zero_at(lo)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if self._is_zero(ai, lo):
                continue
            for j, bj in enumerate(b):
                if self._is_zero(bj, lo):
                    continue
                conv[i + j] = self._add(conv[i + j], self._mul(ai, bj, lo), lo)
        res = list(conv[:d])
        table = self._redpow[level - 1]
        for j in range(d, 2 * d - 1):
            cj = conv[j]
            if self._is_zero(cj, lo):
                continue
            red = table[j - d]
            for i in range(d):
                if not self._is_zero(red[i], lo):
                    res[i] = self._add(res[i], self._mul(cj, red[i], lo), lo)
        return tuple(res)

    def _power_table(self, level):
        """gen_level^(d+j) reduced, for j = 0..d-2, as level-`level` raw values."""
        d = self.dims[level - 1]
        m = self.minpolys[level - 1]
        lo = level - 1
        # gen^d = -(m0 + m1 x + ... + m_{d-1} x^{d-1})
        cur = tuple(self._neg(m[i], lo) for i in range(d))
        table = [cur]
        for _ in range(d - 2):
            # multiply by gen: shift then fold the top coefficient
            top = cur[d - 1]
            shifted = [self._zero_at(lo)] + list(cur[: d - 1])
            if not self._is_zero(top, lo):
                first = table[0]
                for i in range(d):
                    if not self._is_zero(first[i], lo):
                        shifted[i] = self._add(shifted[i], self._mul(top, first[i], lo), lo)
            cur = tuple(shifted)
            table.append(cur)
        return table

    # dense polynomial helpers over the level-(level) field, used by _inv

    def _pl_trim(self, p, level):
        while p and self._is_zero(p[-1], level):
            p.pop()
        return p

    def _pl_divmod(self, a, b, level):
        a = list(a)
        db = len(b) - 1
        if db < 0:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = self._inv(b[-1], level)
        q = [self._zero_at(level)] * max(0, len(a) - db)
        while len(a) - 1 >= db and a:
            if self._is_zero(a[-1], level):
                a.pop()
                continue
            k = len(a) - 1 - db
            f = self._mul(a[-1], inv_lead, level)
            q[k] = f
            for i in range(db + 1):
                a[k + i] = self._sub(a[k + i], self._mul(f, b[i], level), level)
            a.pop()
        return q, self._pl_trim(a, level)

    def _inv(self, a, level):
        if level == 0:
            if a == 0:
                raise ZeroDivisionError("division by zero")
            return 1 / a
        lo = level - 1
        if self._is_zero(a, level):
            raise ZeroDivisionError("division by zero field element")
        m = list(self.minpolys[level - 1])
        r_prev = m
        r = self._pl_trim(list(a), lo)
        s_prev = []
        s = [self._one_at(lo)]
        while r and len(r) > 1:
            q, rem = self._pl_divmod(r_prev, r, lo)
            r_prev, r = r, rem
            # s_new = s_prev - q * s
            prod = [self._zero_at(lo)] * (len(q) + len(s) - 1) if q and s else []
            for i, qi in enumerate(q):
                if self._is_zero(qi, lo):
                    continue
                for j, sj in enumerate(s):
                    if self._is_zero(sj, lo):
                        continue
                    prod[i + j] = self._add(prod[i + j], self._mul(qi, sj, lo), lo)
            n = max(len(s_prev), len(prod))
            s_new = []
            for i in range(n):
                x = s_prev[i] if i < len(s_prev) else self._zero_at(lo)
                y = prod[i] if i < len(prod) else self._zero_at(lo)
                s_new.append(self._sub(x, y, lo))
            s_prev, s = s, self._pl_trim(s_new, lo)
        if not r:
            # gcd = r_prev, degree >= 1: either a is a zero divisor (witness)
            # or a was a multiple of m (impossible for reduced values)
            lead_inv = self._inv(r_prev[-1], lo)
            factor = tuple(self._mul(c, lead_inv, lo) for c in r_prev)
            raise ReducibilityError(level, factor)
        c_inv = self._inv(r[0], lo)
        d = self.dims[level - 1]
        out = [self._zero_at(lo)] * d
        for i, si in enumerate(s):
            out[i] = self._mul(si, c_inv, lo)
        return tuple(out)

    def _to_top(self, raw, level):
        """Embed a level-`level` raw value at the top of the tower."""
        while level < self.height:
            inner = [self._zero_at(level)] * self.dims[level]
            inner[0] = raw
            raw = tuple(inner)
            level += 1
        return raw

    # -- public construction ------------------------------------------------

    @property
    def zero(self):
        return FieldElement(self, self._zero_at(self.height))

    @property
    def one(self):
        return FieldElement(self, self._one_at(self.height))

    def from_rational(self, q):
        return FieldElement(self, self._rat_at(q, self.height))

    def gen(self, level=None):
        """Generator of extension `level` (1-based; default: top)."""
        if level is None:
            level = self.height
        if not 1 <= level <= self.height:
            raise ValueError("no generator at level %d" % level)
        d = self.dims[level - 1]
        inner = [self._zero_at(level - 1)] * d
        inner[1] = self._one_at(level - 1)
        return FieldElement(self, self._to_top(tuple(inner), level))

    def element(self, coords):
        """Build an element from nested coordinate lists (ints/Fractions)."""

        def build(c, level):
            if level == 0:
                return _as_fraction(c)
            if isinstance(c, (int, Fraction)):
                return self._rat_at(c, level)
            vals = [build(x, level - 1) for x in c]
            d = self.dims[level - 1]
            if len(vals) > d:
                raise ValueError("too many coordinates at level %d" % level)
            vals += [self._zero_at(level - 1)] * (d - len(vals))
            return tuple(vals)

        return FieldElement(self, build(coords, self.height))

    def coerce(self, x):
        """Coerce int/Fraction/FieldElement-of-self into an element, else None."""
        if isinstance(x, FieldElement):
            if x.ctx is self or x.ctx._key == self._key:
                return FieldElement(self, x.val)
            return None
        if isinstance(x, (int, Fraction)):
            return self.from_rational(x)
        return None

    def conj(self, x):
        """Complex conjugation, available when the context declares it."""
        if self.conj_images is None:
            raise ValueError("context %s declares no conjugation" % self.label)
        # evaluate coordinates at the conjugated generators
        def ev(raw, level):
            if level == 0:
                return self.from_rational(raw)
            g = self.conj_images[level - 1]
            acc = self.zero
            for c in reversed(raw):
                acc = acc * g + ev(c, level - 1)
            return acc

        return ev(x.val, self.height)

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "FieldContext(%s)" % self.label


class FieldElement:
    """An element of a ``FieldContext`` tower; immutable, operator-overloaded."""

    __slots__ = ("ctx", "val")

    def __init__(self, ctx, val):
        self.ctx = ctx
        self.val = val

    # coercion helper: raw value of other, or None
    def _other(self, x):
        if isinstance(x, FieldElement):
            if x.ctx is self.ctx or x.ctx._key == self.ctx._key:
                return x.val
            return None
        if isinstance(x, (int, Fraction)):
            return self.ctx._rat_at(x, self.ctx.height)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._add(self.val, o, self.ctx.height))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._sub(self.val, o, self.ctx.height))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._sub(o, self.val, self.ctx.height))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx._mul(self.val, o, self.ctx.height))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx._neg(self.val, self.ctx.height))

    def __pos__(self):
        return self

    def inverse(self):
        return FieldElement(self.ctx, self.ctx._inv(self.val, self.ctx.height))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        h = self.ctx.height
        return FieldElement(self.ctx, self.ctx._mul(self.val, self.ctx._inv(o, h), h))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        h = self.ctx.height
        return FieldElement(self.ctx, self.ctx._mul(o, self.ctx._inv(self.val, h), h))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        result = self.ctx.one
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.ctx._is_zero(self.ctx._sub(self.val, o, self.ctx.height), self.ctx.height)

    def __hash__(self):
        return hash((self.ctx._key, self.val))

    def __bool__(self):
        return not self.ctx._is_zero(self.val, self.ctx.height)

    @property
    def is_rational(self):
        def chk(raw, level):
            if level == 0:
                return True
            if not all(self.ctx._is_zero(x, level - 1) for x in raw[1:]):
                return False
            return chk(raw[0], level - 1)

        return chk(self.val, self.ctx.height)

    def rational(self):
        """The element as a Fraction; raises if it is not rational."""
        if not self.is_rational:
            raise ValueError("element is not rational: %r" % self)
        raw = self.val
        for _ in range(self.ctx.height):
            raw = raw[0]
        return raw

    def coords(self):
        return self.val

    def conj(self):
        return self.ctx.conj(self)

    def re(self):
        return (self + self.conj()) / 2

    def im(self):
        i = imaginary_unit(self.ctx)
        return (self - self.conj()) / (2 * i)

    def norm_sq(self):
        """x * conj(x)."""
        return self * self.conj()

    def __repr__(self):
        return self._render()

    def _render(self):
        ctx = self.ctx

        def rend(raw, level):
            if level == 0:
                return str(raw)
            name = ctx.names[level - 1]
            parts = []
            for e, c in enumerate(raw):
                if ctx._is_zero(c, level - 1):
                    continue
                cs = rend(c, level - 1)
                if e == 0:
                    parts.append(cs)
                else:
                    mono = name if e == 1 else "%s^%d" % (name, e)
                    if cs == "1":
                        parts.append(mono)
                    elif cs == "-1":
                        parts.append("-" + mono)
                    else:
                        if ("+" in cs[1:]) or (" " in cs) or ("-" in cs[1:]):
                            cs = "(%s)" % cs
                        parts.append("%s*%s" % (cs, mono))
            if not parts:
                return "0"
            out = parts[0]
            for p in parts[1:]:
                out += " - " + p[1:] if p.startswith("-") else " + " + p
            return out

        return rend(self.val, ctx.height)


def imaginary_unit(ctx):
    """The element i of ctx, for the stock contexts that contain it."""
    for level, desc in enumerate(ctx.gen_numeric or ()):
        if desc == ("root_of_unity", 4):
            return ctx.gen(level + 1)
        if desc == ("root_of_unity", 8):
            g = ctx.gen(level + 1)
            return g * g
        if desc == ("sqrt", Fraction(-1)):
            return ctx.gen(level + 1)
    raise ValueError("context %s has no declared imaginary unit" % ctx.label)


# -- stock contexts ---------------------------------------------------------


@lru_cache(maxsize=None)
def gaussian_field():
    """Q(i), i^2 = -1."""
    return FieldContext(
        [(1, 0, 1)],
        names=("i",),
        label="Q(i)",
        conj_images=[[0, -1]],
        gen_numeric=[("root_of_unity", 4)],
    )


def sqrt_field(d):
    """Q(sqrt(d)) for a rational non-square d; principal root descriptor."""
    return _sqrt_field(Fraction(d))


@lru_cache(maxsize=None)
def _sqrt_field(d):
    conj = [[0, 1]] if d > 0 else [[0, -1]]
    return FieldContext(
        [(-d, 0, 1)],
        names=("s",),
        label="Q(sqrt(%s))" % d,
        conj_images=conj,
        gen_numeric=[("sqrt", d)],
    )


@lru_cache(maxsize=None)
def eighth_root_field():
    """Q(zeta8), zeta8^4 = -1; contains i = zeta8^2 and sqrt2 = zeta8 - zeta8^3."""
    return FieldContext(
        [(1, 0, 0, 0, 1)],
        names=("z8",),
        label="Q(zeta8)",
        conj_images=[[0, 0, 0, -1]],
        gen_numeric=[("root_of_unity", 8)],
    )


def zeta8_sqrt2(ctx=None):
    ctx = ctx or eighth_root_field()
    g = ctx.gen()
    return g - g ** 3


def quartic_root_field(n):
    """Q(n^(1/4)) for a positive rational n, real positive root."""
    n = Fraction(n)
    if n <= 0:
        raise ValueError("radicand must be positive")
    return _quartic_root_field(n)


@lru_cache(maxsize=None)
def _quartic_root_field(n):
    return FieldContext(
        [(-n, 0, 0, 0, 1)],
        names=("q4",),
        label="Q(%s^(1/4))" % n,
        conj_images=[[0, 1]],
        gen_numeric=[("nth_root", n, 4)],
    )


def with_imaginary_unit(base_kind, *params):
    """Tower: a real stock context extended by i (two levels total)."""
    return _with_imaginary_unit(base_kind, *(Fraction(p) for p in params))


@lru_cache(maxsize=None)
def _with_imaginary_unit(base_kind, *params):
    if base_kind == "quartic_root":
        base = quartic_root_field(*params)
    elif base_kind == "sqrt":
        base = sqrt_field(*params)
    else:
        raise ValueError("unsupported base kind %r" % base_kind)
    if base.height != 1:
        raise ValueError("tower cap is two extensions")
    return FieldContext(
        [base.minpolys[0], (1, 0, 1)],
        names=(base.names[0], "i"),
        label=base.label[:-1] + ", i)",
        conj_images=[[0, 1], [0, -1]],
        gen_numeric=list(base.gen_numeric) + [("root_of_unity", 4)],
    )
