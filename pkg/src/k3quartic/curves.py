"""Curve models, rational maps between them, and exact map verification.

A curve here is one affine equation head^power = rhs over a named variable
tuple (extra names in the tuple act as free parameters).  Maps are dicts
sending each target variable to a rational expression in the source
variables; verification substitutes the map into the target equation and
reduces in the source coordinate ring, so a pass is an exact identity, not a
numerical check.

The concrete models: the genus-2 curve tau^2 = rho(rho^4 + 2 beta^4 rho^2 + 1),
its degree-2 quotient v^2 = u^3 + 4u^2 + 2(1+beta^4)u, the j=1728 cubic
y^2 = x^3 - x, and the exponent-4 model w1^4 = z1^2 - 1.
"""

from fractions import Fraction

from .fields import gaussian_field, imaginary_unit, sqrt_field
from .multipoly import MultiPoly, QuotientContext, QuotientFraction
from .polynomials import Poly, poly_gcd


def _as_qf(ctx, value):
    if isinstance(value, QuotientFraction):
        if value.qctx.vars != ctx.vars:
            raise TypeError("expression over the wrong variables")
        return value
    if isinstance(value, MultiPoly):
        return QuotientFraction(ctx, value)
    return QuotientFraction(ctx, MultiPoly.const(ctx.vars, value))


class CurveModel:
    """head^power = rhs over vars; rhs must not involve the head variable."""

    __slots__ = ("vars", "head", "power", "rhs", "_ctx")

    def __init__(self, vars, head, power, rhs):
        self.vars = tuple(vars)
        if head not in self.vars:
            raise ValueError("head %r not among %r" % (head, self.vars))
        if rhs.vars != self.vars:
            raise ValueError("rhs is over the wrong variable tuple")
        if rhs.degree_in(head) > 0:
            raise ValueError("rhs must not involve the head variable")
        self.head = head
        self.power = power
        self.rhs = rhs
        self._ctx = None

    def context(self):
        if self._ctx is None:
            self._ctx = QuotientContext(self.vars, [(self.head, self.power, self.rhs)])
        return self._ctx

    def equation(self):
        return MultiPoly.gen(self.vars, self.head, self.power) - self.rhs

    def q(self, name):
        return QuotientFraction.gen(self.context(), name)

    def __repr__(self):
        return "CurveModel(%s^%d = %s)" % (self.head, self.power, self.rhs)


class CurveMap:
    """A rational map: each target variable gets an expression in source vars.

    Target variables missing from the dict default to the identity when the
    same name exists on the source (the parameter-passthrough case).
    """

    __slots__ = ("source", "target", "images")

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        ctx = source.context()
        filled = {}
        for name in target.vars:
            if name in images:
                filled[name] = _as_qf(ctx, images[name])
            elif name in source.vars:
                filled[name] = source.q(name)
            else:
                raise ValueError("no image for target variable %r" % name)
        self.images = filled

    def verify(self):
        """(passes, residual): the target equation pulled back, fully reduced."""
        ctx = self.source.context()
        residual = _as_qf(ctx, self.target.equation().evaluate(self.images))
        return residual.is_zero, residual

    def __eq__(self, other):
        if not isinstance(other, CurveMap):
            return NotImplemented
        if self.source.vars != other.source.vars or self.target.vars != other.target.vars:
            return False
        return all(self.images[n] == other.images[n] for n in self.target.vars)

    def __hash__(self):
        raise TypeError("CurveMap is unhashable")

    def __repr__(self):
        body = ", ".join("%s -> %s" % (n, self.images[n]) for n in self.target.vars
                         if n not in self.source.vars or self.images[n] != self.source.q(n))
        return "CurveMap{%s}" % body


def _substitute_qf(qf, assignment, out_ctx):
    num = qf.num.evaluate(assignment)
    den = qf.den.evaluate(assignment)
    return _as_qf(out_ctx, num) / _as_qf(out_ctx, den)


def compose(outer, inner):
    """outer after inner; inner.target and outer.source must share variables."""
    if inner.target.vars != outer.source.vars:
        raise TypeError("maps do not chain: %r vs %r"
                        % (inner.target.vars, outer.source.vars))
    ctx = inner.source.context()
    images = {
        name: _substitute_qf(img, inner.images, ctx)
        for name, img in outer.images.items()
    }
    return CurveMap(inner.source, outer.target, images)


def identity_map(curve):
    return CurveMap(curve, curve, {n: curve.q(n) for n in curve.vars})


def verify_map(source, target, images):
    return CurveMap(source, target, images).verify()


def verify_involution(curve, images):
    """Check an endomorphism preserves the curve and squares to the identity."""
    m = CurveMap(curve, curve, images)
    preserves, residual = m.verify()
    squares = compose(m, m) == identity_map(curve)
    return preserves and squares, {"preserves": preserves, "residual": residual,
                                   "squares_to_identity": squares}


def automorphism_order(curve, images, cap=12):
    m = CurveMap(curve, curve, images)
    ok, residual = m.verify()
    if not ok:
        raise ValueError("map does not preserve the curve: residual %r" % residual)
    ident = identity_map(curve)
    acc = m
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = compose(m, acc)
    raise ValueError("order exceeds cap %d" % cap)


# -- the concrete models -----------------------------------------------------

G2_VARS = ("rho", "tau", "beta")
WB_VARS = ("u", "v", "beta")


def genus2_curve():
    """tau^2 = rho(rho^4 + 2 beta^4 rho^2 + 1), beta a free parameter."""
    rho = MultiPoly.gen(G2_VARS, "rho")
    beta = MultiPoly.gen(G2_VARS, "beta")
    rhs = rho * (rho ** 4 + 2 * beta ** 4 * rho ** 2 + 1)
    return CurveModel(G2_VARS, "tau", 2, rhs)


def genus2_parameter_curve():
    """tau^2 = rho(rho^4 + 2 rho^2 + alpha), the un-normalized form."""
    V = ("rho", "tau", "alpha")
    rho = MultiPoly.gen(V, "rho")
    alpha = MultiPoly.gen(V, "alpha")
    return CurveModel(V, "tau", 2, rho * (rho ** 4 + 2 * rho ** 2 + alpha))


def rescale_genus2_check():
    """alpha = beta^-8 with (rho, tau) -> (beta^-2 rho, beta^-5 tau) lands the
    un-normalized curve on the normalized one; checked as an exact identity."""
    ctx = QuotientContext(G2_VARS, [])
    rho = QuotientFraction.gen(ctx, "rho")
    tau = QuotientFraction.gen(ctx, "tau")
    b = QuotientFraction.gen(ctx, "beta")
    lhs = ((tau / b ** 5) ** 2
           - (rho / b ** 2) * ((rho / b ** 2) ** 4 + 2 * (rho / b ** 2) ** 2 + 1 / b ** 8))
    rhs = tau ** 2 - rho * (rho ** 4 + 2 * b ** 4 * rho ** 2 + 1)
    return (lhs * b ** 10 - rhs).is_zero


def base_elliptic():
    """v^2 = u^3 + 4u^2 + 2(1+beta^4)u, the quotient target."""
    u = MultiPoly.gen(WB_VARS, "u")
    beta = MultiPoly.gen(WB_VARS, "beta")
    rhs = u ** 3 + 4 * u ** 2 + (2 + 2 * beta ** 4) * u
    return CurveModel(WB_VARS, "v", 2, rhs)


def base_elliptic_rhs(beta4):
    """The same cubic with beta^4 specialized, as a univariate polynomial."""
    return Poly("u", {3: 1, 2: 4, 1: 2 * (1 + Fraction(beta4))})


def quotient_map(perturb=False):
    """The degree-2 quotient (u, v) = (c rho/(rho-1)^2, c tau/(rho-1)^3)
    with c = 2(1+beta^4).  perturb=True is a negative control (wrong
    denominator exponent on v)."""
    B = genus2_curve()
    E = base_elliptic()
    ctx = B.context()
    rho, tau, beta = B.q("rho"), B.q("tau"), B.q("beta")
    c = 2 + 2 * beta ** 4
    vden = (rho - 1) ** (2 if perturb else 3)
    return CurveMap(B, E, {"u": c * rho / (rho - 1) ** 2, "v": c * tau / vden})


def rho_inversion():
    """(rho, tau) -> (1/rho, tau/rho^3); an involution of the genus-2 curve."""
    B = genus2_curve()
    rho, tau = B.q("rho"), B.q("tau")
    return CurveMap(B, B, {"rho": 1 / rho, "tau": tau / rho ** 3})


def order_four_twist():
    """(rho, tau) -> (-rho, i tau); squares to the hyperelliptic involution."""
    B = genus2_curve()
    rho, tau = B.q("rho"), B.q("tau")
    i = imaginary_unit(gaussian_field())
    return CurveMap(B, B, {"rho": -rho, "tau": i * tau})


def hyperelliptic_involution():
    B = genus2_curve()
    return CurveMap(B, B, {"tau": -B.q("tau")})


def negation_map(curve):
    """(u, v) -> (u, -v) on a head-power-2 model: the elliptic [-1]."""
    return CurveMap(curve, curve, {curve.head: -curve.q(curve.head)})


def quotient_negation_check():
    """The quotient map intertwines rho-inversion with elliptic negation:
    f composed with the involution equals [-1] composed with f."""
    f = quotient_map()
    left = compose(f, rho_inversion())
    right = compose(negation_map(base_elliptic()), f)
    return left == right


def minus_x_cubic():
    """y^2 = x^3 - x."""
    V = ("x", "y")
    x = MultiPoly.gen(V, "x")
    return CurveModel(V, "y", 2, x ** 3 - x)


def exponent_four_model():
    """w1^4 = z1^2 - 1."""
    V = ("z1", "w1")
    z1 = MultiPoly.gen(V, "z1")
    return CurveModel(V, "w1", 4, z1 ** 2 - 1)


def cubic_to_exponent_four():
    """(z1, w1) = ((x + 1/x)/2, y/(sqrt(2) x)): an isomorphism over Q(sqrt 2)."""
    C = minus_x_cubic()
    M = exponent_four_model()
    x, y = C.q("x"), C.q("y")
    s2 = sqrt_field(2).gen()
    return CurveMap(C, M, {"z1": (x + 1 / x) / 2, "w1": (s2 ** -1) * y / x})


def quarter_turn():
    """(z1, w1) -> (z1, i w1) on the exponent-4 model; order 4."""
    M = exponent_four_model()
    i = imaginary_unit(gaussian_field())
    return CurveMap(M, M, {"w1": i * M.q("w1")})


# -- invariants and the group law ---------------------------------------------


def j_invariant(rhs):
    """j of v^2 = rhs(u), rhs a monic cubic; exact in the coefficient domain.

    Shifts out the u^2 term and evaluates 1728 * 4p^3 / (4p^3 + 27 q^2);
    raises on a singular cubic (vanishing discriminant).
    """
    if rhs.degree != 3:
        raise ValueError("rhs must be a cubic")
    if rhs.leading_coefficient() != 1:
        raise ValueError("rhs must be monic")
    a2, a4, a6 = rhs.coeff(2), rhs.coeff(1), rhs.coeff(0)
    p = a4 - a2 * a2 / 3
    q = a6 - a2 * a4 / 3 + 2 * a2 ** 3 / Fraction(27)
    denom = 4 * p ** 3 + 27 * q * q
    if denom == 0:
        raise ValueError("singular cubic: discriminant vanishes")
    return 1728 * 4 * p ** 3 / denom


def hyperelliptic_genus(h):
    """Genus of tau^2 = h(rho) for squarefree h; raises otherwise."""
    if h.degree < 1:
        raise ValueError("h must be nonconstant")
    if poly_gcd(h, h.derivative()).degree != 0:
        raise ValueError("h is not squarefree: the model is singular")
    return int(h.degree - 1) // 2


class _PointAtInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "O"


EC_INFINITY = _PointAtInfinity()


def on_curve(p, a4, a2=0, a6=0):
    if p is EC_INFINITY:
        return True
    u, v = p
    return v * v == u ** 3 + a2 * u * u + a4 * u + a6


def ec_add(p1, p2, a4, a2=0, a6=0):
    """Chord-and-tangent addition on v^2 = u^3 + a2 u^2 + a4 u + a6.

    Coordinates are anything with exact field arithmetic.  EC_INFINITY is the
    identity.  No on-curve validation here; use on_curve when unsure.
    """
    if p1 is EC_INFINITY:
        return p2
    if p2 is EC_INFINITY:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2:
        if y1 + y2 == 0:
            return EC_INFINITY
        s = (3 * x1 * x1 + 2 * a2 * x1 + a4) / (2 * y1)
    else:
        s = (y2 - y1) / (x2 - x1)
    x3 = s * s - a2 - x1 - x2
    y3 = s * (x1 - x3) - y1
    return (x3, y3)


def ec_neg(p):
    if p is EC_INFINITY:
        return p
    return (p[0], -p[1])


# -- pullback of the invariant differential -----------------------------------


def _total_derivative(qf, head, base):
    """d/d(base) on the curve's function field, with d(head)/d(base) from the
    defining relation head^2 = h: d(head) = h' head / (2h) d(base)."""
    ctx = qf.qctx
    (hd, power, h) = ctx.relations[0]
    if hd != head or power != 2:
        raise ValueError("total derivative needs a head-power-2 model")
    hp = h.derivative(base)
    head_mp = MultiPoly.gen(ctx.vars, head)

    def dpoly(n):
        out = QuotientFraction(ctx, n.derivative(base))
        nh = n.derivative(head)
        if not nh.is_zero:
            out = out + QuotientFraction(ctx, nh * hp * head_mp, 2 * h)
        return out

    n, d = qf.num, qf.den
    dq = dpoly(n) * _as_qf(ctx, d) - _as_qf(ctx, n) * dpoly(d)
    return dq / _as_qf(ctx, d * d)


def pullback_differential(cmap, base="rho", du="u", v="v"):
    """Pull du/v back along a map from a head-power-2 curve.

    Writes the pullback as P(base) * d(base)/head and returns
    {"regular": bool, "coords": (c0, c1, ...), "raw": ...}; coords are the
    coefficients of P when P is a polynomial in the base variable alone.
    """
    src = cmap.source
    ctx = src.context()
    du_img = cmap.images[du]
    v_img = cmap.images[v]
    ratio = _total_derivative(du_img, src.head, base) / v_img
    s = ratio * src.q(src.head)
    p = s.num.try_exact_div(s.den)
    if p is None or p.degree_in(src.head) > 0:
        return {"regular": False, "coords": None, "raw": s}
    i_base = src.vars.index(base)
    coords = {}
    for e, c in p.terms.items():
        if any(k and j != i_base for j, k in enumerate(e)):
            return {"regular": False, "coords": None, "raw": p}
        coords[e[i_base]] = c
    top = max(coords) if coords else 0
    return {
        "regular": True,
        "coords": tuple(coords.get(k, 0) for k in range(top + 1)),
        "raw": p,
    }


def pullback_matrix(maps, base="rho", du="u", v="v", width=2):
    """Rows of pullback coordinates for several maps, plus the 2x2 determinant
    when exactly two maps each give two coordinates."""
    rows = []
    for m in maps:
        rec = pullback_differential(m, base=base, du=du, v=v)
        if not rec["regular"]:
            raise ValueError("pullback is not regular: %r" % rec["raw"])
        c = rec["coords"]
        rows.append(tuple(c) + (0,) * (width - len(c)))
    det = None
    if len(rows) == 2 and width == 2:
        det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    return {"rows": rows, "det": det}
