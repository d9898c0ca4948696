"""Weierstrass curves over an arbitrary coefficient field.

Coefficients may be rationals, QuadExt, F_q elements or RatFuncs (for curves
over function fields).  Points are :class:`CurvePoint`; the zero point has
``x is None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from gmpy2 import mpq

from .algebra import Poly, RatFunc, as_ratfunc, poly_coprime_base, rat, squarefree_decomposition
from .algebra.intfactor import factor_int
from .mestre import QuarticModel, ratfunc_sqrt


def _zero_like(c):
    return c * 0


class NotOnCurveError(ValueError):
    pass


class CurvePoint:
    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        self.x = x
        self.y = y

    @classmethod
    def zero(cls) -> "CurvePoint":
        return cls()

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __iter__(self):
        return iter((self.x, self.y))

    def map(self, fn) -> "CurvePoint":
        return self if self.is_zero else CurvePoint(fn(self.x), fn(self.y))

    def __repr__(self):
        return "O" if self.is_zero else f"({self.x}, {self.y})"


class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    __slots__ = ("a", "short", "_disc")

    def __init__(self, a1, a2, a3, a4, a6):
        self.a = (a1, a2, a3, a4, a6)
        self.short = not a1 and not a2 and not a3
        self._disc = None
        if not self.discriminant:
            raise ValueError("singular Weierstrass equation (discriminant 0)")

    @classmethod
    def short_form(cls, A, B) -> "WeierstrassCurve":
        z = _zero_like(A)
        return cls(z, z, z, A, B)

    a1 = property(lambda s: s.a[0])
    a2 = property(lambda s: s.a[1])
    a3 = property(lambda s: s.a[2])
    a4 = property(lambda s: s.a[3])
    a6 = property(lambda s: s.a[4])

    @property
    def var(self) -> str | None:
        for c in self.a:
            if isinstance(c, RatFunc):
                return c.var
        return None

    @property
    def b2(self):
        return self.a1 * self.a1 + self.a2 * 4

    @property
    def b4(self):
        return self.a1 * self.a3 + self.a4 * 2

    @property
    def b6(self):
        return self.a3 * self.a3 + self.a6 * 4

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.a
        return a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self):
        if self.short:
            return self.a4 * -48
        b2 = self.b2
        return b2 * b2 - self.b4 * 24

    @property
    def c6(self):
        if self.short:
            return self.a6 * -864
        b2 = self.b2
        return -(b2 * b2 * b2) + b2 * self.b4 * 36 - self.b6 * 216

    @property
    def discriminant(self):
        if self._disc is None:
            if self.short:
                A, B = self.a4, self.a6
                self._disc = (A * A * A * 4 + B * B * 27) * -16
            else:
                b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
                self._disc = -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9
        return self._disc

    @property
    def j_invariant(self):
        c4 = self.c4
        return c4 * c4 * c4 / self.discriminant

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and all(x == y for x, y in zip(self.a, other.a))

    def __hash__(self):
        return hash(self.a)

    def __repr__(self):
        return "WeierstrassCurve(" + ", ".join(str(c) for c in self.a) + ")"

    # -------------------------------------------------------------- points
    def contains(self, P: CurvePoint) -> bool:
        if P.is_zero:
            return True
        x, y = P.x, P.y
        a1, a2, a3, a4, a6 = self.a
        if self.short:
            return y * y == (x * x + a4) * x + a6
        return y * y + a1 * x * y + a3 * y == ((x + a2) * x + a4) * x + a6

    def point(self, x, y, check: bool = True) -> CurvePoint:
        P = CurvePoint(x, y)
        if check and not self.contains(P):
            raise NotOnCurveError("point is not on the curve")
        return P

    def neg(self, P: CurvePoint) -> CurvePoint:
        if P.is_zero:
            return P
        if self.short:
            return CurvePoint(P.x, -P.y)
        return CurvePoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: CurvePoint, Q: CurvePoint, check: bool = True) -> CurvePoint:
        if check:
            for R in (P, Q):
                if not self.contains(R):
                    raise NotOnCurveError("point is not on the curve")
        return self._add(P, Q)

    def _add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P.is_zero:
            return Q
        if Q.is_zero:
            return P
        a1, a2, a3, a4, _ = self.a
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if self.short:
                s = y1 + y2
            else:
                s = y1 + y2 + a1 * x2 + a3
            if not s:
                return CurvePoint()
            if self.short:
                lam = (x1 * x1 * 3 + a4) / (y1 * 2)
            else:
                lam = (x1 * x1 * 3 + a2 * x1 * 2 + a4 - a1 * y1) / (y1 * 2 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        if self.short:
            x3 = lam * lam - x1 - x2
            y3 = lam * (x1 - x3) - y1
        else:
            nu = y1 - lam * x1
            x3 = lam * lam + a1 * lam - a2 - x1 - x2
            y3 = -(lam + a1) * x3 - nu - a3
        return CurvePoint(x3, y3)

    def sub(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        return self._add(P, self.neg(Q))

    def double(self, P: CurvePoint) -> CurvePoint:
        return self._add(P, P)

    def mul(self, n: int, P: CurvePoint) -> CurvePoint:
        if n < 0:
            return self.mul(-n, self.neg(P))
        result = CurvePoint()
        base = P
        while n:
            if n & 1:
                result = self._add(result, base)
            n >>= 1
            if n:
                base = self._add(base, base)
        return result

    def sum(self, points) -> CurvePoint:
        acc = CurvePoint()
        for P in points:
            acc = self._add(acc, P)
        return acc

    def map_coeffs(self, fn) -> "WeierstrassCurve":
        return WeierstrassCurve(*(fn(c) for c in self.a))


# --------------------------------------------------------- changes of model
@dataclass(frozen=True)
class Isomorphism:
    """x = u^2 x' + r, y = u^3 y' + s u^2 x' + t (old coordinates in terms of new)."""

    u: object
    r: object
    s: object
    t: object

    @classmethod
    def identity(cls, one=1) -> "Isomorphism":
        return cls(one, one * 0, one * 0, one * 0)

    def curve_image(self, E: WeierstrassCurve) -> WeierstrassCurve:
        u, r, s, t = self.u, self.r, self.s, self.t
        a1, a2, a3, a4, a6 = E.a
        u2 = u * u
        u3, u4 = u2 * u, u2 * u2
        n1 = (a1 + s * 2) / u
        n2 = (a2 - s * a1 + r * 3 - s * s) / u2
        n3 = (a3 + r * a1 + t * 2) / u3
        n4 = (a4 - s * a3 + r * a2 * 2 - (t + r * s) * a1 + r * r * 3 - s * t * 2) / u4
        n6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / (u3 * u3)
        return WeierstrassCurve(n1, n2, n3, n4, n6)

    def point_image(self, P: CurvePoint) -> CurvePoint:
        if P.is_zero:
            return P
        u2 = self.u * self.u
        dx = P.x - self.r
        return CurvePoint(dx / u2, (P.y - self.s * dx - self.t) / (u2 * self.u))

    def point_preimage(self, P: CurvePoint) -> CurvePoint:
        if P.is_zero:
            return P
        u2 = self.u * self.u
        return CurvePoint(u2 * P.x + self.r, u2 * self.u * P.y + self.s * u2 * P.x + self.t)

    def compose(self, other: "Isomorphism") -> "Isomorphism":
        """First self, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        uu = u1 * u1
        return Isomorphism(u1 * u2, r1 + uu * r2, s1 + u1 * s2, t1 + uu * s1 * r2 + uu * u1 * t2)

    def inverse(self) -> "Isomorphism":
        u, r, s, t = self.u, self.r, self.s, self.t
        u2 = u * u
        return Isomorphism(1 / u, -r / u2, -s / u, (r * s - t) / (u2 * u))


def to_short(E: WeierstrassCurve) -> tuple[WeierstrassCurve, Isomorphism]:
    """Short model y^2 = x^3 + A x + B (char != 2, 3)."""
    one = E.a4 * 0 + 1
    if E.short:
        return E, Isomorphism.identity(one)
    s = -E.a1 / 2
    r = -E.b2 / 12
    t = -(E.a3 + r * E.a1) / 2
    iso = Isomorphism(one, r, s, t)
    F = iso.curve_image(E)
    assert F.short
    return F, iso


def short_isomorphism(E1: WeierstrassCurve, E2: WeierstrassCurve) -> Isomorphism | None:
    """An isomorphism between two short models over the common field, or None."""
    A1, B1, A2, B2 = E1.a4, E1.a6, E2.a4, E2.a6
    if A1 and B1:
        if not A2 or not B2:
            return None
        lam2 = (B2 * A1) / (B1 * A2)
    elif A1:
        if B2 or not A2:
            return None
        ratio = A2 / A1
        lam2 = _sqrt(ratio)
        if lam2 is None:
            return None
    else:
        if A2 or not B2:
            return None
        ratio = B2 / B1
        # lambda^6 = ratio; search lambda^2 as a cube root only for simple cases
        lam2 = _cbrt(ratio)
        if lam2 is None:
            return None
    lam = _sqrt(lam2)
    if lam is None:
        return None
    if lam2 * lam2 * A1 != A2 or lam2 * lam2 * lam2 * B1 != B2:
        return None
    z = lam * 0
    return Isomorphism(1 / lam, z, z, z)


def _sqrt(x):
    if isinstance(x, RatFunc):
        return ratfunc_sqrt(x)
    from .algebra import sqrt_quadext

    if hasattr(x, "sqrt"):
        return x.sqrt()
    return sqrt_quadext(x)


def _cbrt(x):
    if isinstance(x, RatFunc) and x.is_constant():
        x = x.constant_value()
    if isinstance(x, RatFunc):
        return None
    import gmpy2

    x = rat(x)
    n, en = gmpy2.iroot(abs(x.numerator), 3)
    d, ed = gmpy2.iroot(x.denominator, 3)
    if en and ed:
        return mpq(n if x > 0 else -n, d)
    return None


# ------------------------------------------------------ quartic -> Weierstrass
class ModelMap:
    """Birational map from a quartic y^2 = R(x) (with a marked zero) to a Weierstrass model.

    ``forward`` accepts affine points (x, y) and the formal marks
    ``("inf", +1)``, ``("inf", -1)`` for the points at infinity (these need a
    square leading coefficient).  After the quartic step an Isomorphism
    ``iso`` brings the cubic into the final model.
    """

    def __init__(self, quartic: QuarticModel, x0, y0, cubic: WeierstrassCurve, iso: Isomorphism):
        self.quartic = quartic
        self.x0, self.q = x0, y0
        self.cubic = cubic
        self.iso = iso
        self.target = iso.curve_image(cubic)
        # shifted quartic coefficients v^2 = a w^4 + b w^3 + c w^2 + d w + q^2
        R = quartic.poly()
        shifted = R.compose(Poly([x0, x0 * 0 + 1], "x"))
        self._abcd = [shifted[4], shifted[3], shifted[2], shifted[1], shifted[0]]

    def then(self, iso: Isomorphism) -> "ModelMap":
        return ModelMap(self.quartic, self.x0, self.q, self.cubic, self.iso.compose(iso))

    def _forward_cubic(self, point) -> CurvePoint:
        a, b, c, d, e = self._abcd
        q = self.q
        E = self.cubic
        if isinstance(point, tuple) and point and point[0] == "inf":
            alpha = _sqrt(a)
            if alpha is None:
                raise ValueError("points at infinity need a square leading coefficient")
            if not q:
                return self._forward_inf_y0(point[1], alpha)
            return CurvePoint(q * alpha * 2 * point[1], _zero_like(a))
        x, y = point
        w = x - self.x0
        v = y
        if not q:
            if not w:
                return CurvePoint()
            k = d
            W = 1 / w
            X = W * k
            Y = v * W * W * k
            return CurvePoint(X, Y)
        if not w:
            if v == q:
                return CurvePoint()
            return CurvePoint(-E.a2, E.a1 * E.a2 - E.a3)
        w2 = w * w
        X = (q * (v + q) * 2 + d * w) / w2
        Y = (q * q * (v + q) * 4 + q * (d * w + c * w2) * 2 - d * d * w2 / (q * 2)) / (w2 * w)
        return CurvePoint(X, Y)

    def _forward_inf_y0(self, sign, alpha):
        # v^2 = R(x0 + 1/W) W^-4: points at infinity are W = 0, V = +-alpha
        k = self._abcd[3]
        return CurvePoint(_zero_like(alpha), alpha * sign * k)

    def forward(self, point) -> CurvePoint:
        return self.iso.point_image(self._forward_cubic(point))

    def backward(self, P: CurvePoint):
        """Inverse map; returns (x, y) or the formal mark ("inf", sign)."""
        P = self.iso.point_preimage(P)
        a, b, c, d, e = self._abcd
        q = self.q
        if P.is_zero:
            return (self.x0, q)
        X, Y = P.x, P.y
        if not q:
            k = d
            if not X:
                alpha = _sqrt(a)
                return ("inf", 1 if Y == alpha * k else -1)
            W = X / k
            return (self.x0 + 1 / W, Y / (W * W * k))
        if not Y:
            alpha = _sqrt(a)
            if alpha is not None and X * X == alpha * alpha * q * q * 4:
                return ("inf", 1 if X == q * alpha * 2 else -1)
        if X == -self.cubic.a2 and Y == self.cubic.a1 * self.cubic.a2 - self.cubic.a3:
            return (self.x0, -q)
        w = (q * (X + c) * 2 - d * d / (q * 2)) / Y
        v = -q + w * (w * X - d) / (q * 2)
        return (self.x0 + w, v)


def quartic_to_weierstrass(model: QuarticModel, zero, short: bool = True) -> tuple[WeierstrassCurve, ModelMap]:
    """Weierstrass model of y^2 = R(x) with the marked point ``zero`` sent to O."""
    x0, y0 = zero
    if not model.contains(x0, y0):
        raise NotOnCurveError("zero point is not on the quartic")
    R = model.poly()
    one = as_ratfunc(1, model.var)
    shifted = R.compose(Poly([x0, one], "x"))
    a, b, c, d, e = shifted[4], shifted[3], shifted[2], shifted[1], shifted[0]
    if y0:
        q = y0
        a1 = d / q
        a2 = c - d * d / (q * q * 4)
        a3 = q * b * 2
        a4 = -(q * q * a * 4)
        a6 = a2 * a4
        cubic = WeierstrassCurve(a1, a2, a3, a4, a6)
    else:
        # v^2 = d w^3 + c w^2 + b w + a after x = x0 + 1/w; scale to monic
        k = d
        if not k:
            raise ValueError("zero point is a multiple root of the quartic")
        z = _zero_like(k)
        cubic = WeierstrassCurve(z, c, z, b * k, a * k * k)
    iso = Isomorphism.identity(one)
    if short:
        _, iso = to_short(cubic)
    mm = ModelMap(model, x0, y0, cubic, iso)
    return mm.target, mm


def jacobian_invariants(model: QuarticModel):
    """Classical invariants I, J of the quartic."""
    e, d, c, b, a = model.coeffs
    I = a * e * 12 - b * d * 3 + c * c
    J = a * c * e * 72 + b * c * d * 9 - a * d * d * 27 - e * b * b * 27 - c * c * c * 2
    return I, J


def jacobian(model: QuarticModel) -> WeierstrassCurve:
    """y^2 = x^3 - 27 I x - 27 J, the Jacobian of the quartic."""
    I, J = jacobian_invariants(model)
    return WeierstrassCurve.short_form(I * -27, J * -27)


# ---------------------------------------------------------------- minimality
def _int_val(x, ell: int) -> int | float:
    x = rat(x)
    if not x:
        return math.inf
    v = 0
    n, dd = int(x.numerator), int(x.denominator)
    while n % ell == 0:
        n //= ell
        v += 1
    while dd % ell == 0:
        dd //= ell
        v -= 1
    return v


def _poly_int_val(f: Poly, ell: int):
    return min((_int_val(c, ell) for c in f.coeffs if c), default=math.inf)


def _primes_of(values) -> set:
    primes = set()
    for x in values:
        x = rat(x)
        if not x:
            continue
        for n in (abs(int(x.numerator)), int(x.denominator)):
            if n > 1:
                primes.update(factor_int(n))
    return primes


def minimal_model(E: WeierstrassCurve) -> tuple[WeierstrassCurve, Isomorphism]:
    """Globally minimal short model over Q(t) with normalized constant scaling.

    Coefficients become polynomials in t; at each finite place no further
    (x, y) -> (pi^2 x, pi^3 y) reduction applies; among the remaining
    constant rescalings the one giving integer coefficients with minimal
    prime powers is chosen (for each prime l the least m with l^(4m) A and
    l^(6m) B integral).
    """
    S, iso = to_short(E)
    A, B = as_ratfunc(S.a4, E.var or "t"), as_ratfunc(S.a6, E.var or "t")
    var = A.var
    # finite places: coprime base of the multiplicity parts of A and B
    parts = []
    for f in (A.num, A.den, B.num, B.den):
        if len(f.coeffs) > 1:
            parts += [g for g, _ in squarefree_decomposition(f.monic())]
    lam = RatFunc.const(mpq(1), var)
    for h in poly_coprime_base(parts) if parts else []:
        vA = _val(A, h)
        vB = _val(B, h)
        e = min(_floor_div(vA, 4), _floor_div(vB, 6))
        if e:
            lam = lam * RatFunc(h, reduced=True) ** e
    A1, B1 = A / lam**4, B / lam**6
    assert A1.is_polynomial() and B1.is_polynomial()
    # constant normalization
    cA, cB = A1.num, B1.num
    c = mpq(1)
    for ell in sorted(_primes_of(list(cA.coeffs) + list(cB.coeffs))):
        vA, vB = _poly_int_val(cA, ell), _poly_int_val(cB, ell)
        m = max(_ceil_div(-vA, 4), _ceil_div(-vB, 6))
        c *= mpq(ell) ** m
    # x = lam^2 c^-2 x', so u = lam / c
    scale = lam / c
    z = scale * 0
    step = Isomorphism(scale, z, z, z)
    total = iso.compose(step)
    M = step.curve_image(S)
    assert M.a4.is_polynomial() and M.a6.is_polynomial()
    return M, total


def _val(f: RatFunc, h: Poly) -> int | float:
    from .algebra import valuation

    if not f:
        return math.inf
    return valuation(f.num, h) - valuation(f.den, h)


def _floor_div(v, k: int):
    if v == math.inf:
        return math.inf
    return v // k


def _ceil_div(v, k: int):
    if v == -math.inf:
        return -math.inf
    if v == math.inf:
        return -math.inf
    return -((-v) // k)


def is_minimal_at(E: WeierstrassCurve, place) -> bool:
    """Short model over Q(t): minimal at a finite place (monic irreducible Poly) or "inf"."""
    A, B = as_ratfunc(E.a4, E.var or "t"), as_ratfunc(E.a6, E.var or "t")
    if place == "inf":
        chi = chi_of(E)
        vA = A.valuation("inf") + 4 * chi if A else math.inf
        vB = B.valuation("inf") + 6 * chi if B else math.inf
    else:
        vA, vB = _val(A, place), _val(B, place)
    return vA < 0 or vB < 0 or not (vA >= 4 and vB >= 6)


def chi_of(E: WeierstrassCurve) -> int:
    """max ceil(deg a_i / i) for a model with polynomial coefficients."""
    best = 0
    for i, c in zip((1, 2, 3, 4, 6), E.a):
        if c:
            f = as_ratfunc(c, E.var or "t")
            if not f.is_polynomial():
                raise ValueError("chi needs polynomial coefficients")
            best = max(best, -(-(len(f.num.coeffs) - 1) // i))
    return best


# ---------------------------------------------------- base change / reduction
def base_change_and_specialize(E: WeierstrassCurve, target) -> WeierstrassCurve:
    """Substitute t <- phi (a RatFunc) or evaluate t <- t0 (a scalar or F_q element).

    Evaluation at a value where Delta vanishes is allowed and returns the
    singular cubic as a tuple-backed curve via :func:`specialize_coefficients`.
    """
    if isinstance(target, (RatFunc, Poly)):
        phi = as_ratfunc(target)
        return E.map_coeffs(lambda c: as_ratfunc(c, E.var or "t").compose(phi))
    coeffs = specialize_coefficients(E, target)
    return WeierstrassCurve(*coeffs)


def specialize_coefficients(E: WeierstrassCurve, t0) -> tuple:
    out = []
    for c in E.a:
        f = as_ratfunc(c, E.var or "t")
        den = f.den(t0)
        if not den:
            raise ZeroDivisionError("evaluation at a pole of a coefficient")
        out.append(f.num(t0) / den)
    return tuple(out)


def descend_even(E: WeierstrassCurve, new_var: str = "u") -> WeierstrassCurve:
    """For coefficients even in t, the same curve over Q(u), u = t^2."""

    def down(c):
        f = as_ratfunc(c, E.var or "t")
        return RatFunc(f.num.even_part_in(new_var), f.den.even_part_in(new_var))

    return E.map_coeffs(down)


def pullback_square(E: WeierstrassCurve, new_var: str = "t") -> WeierstrassCurve:
    """Curve over Q(u) viewed over Q(t) with u = t^2."""
    t = RatFunc.gen(new_var)
    return base_change_and_specialize(E, t * t)


def reduce_curve(E: WeierstrassCurve, field) -> WeierstrassCurve:
    """Reduce a curve over Q(t) (integral at p) to F_q(t)."""
    return E.map_coeffs(lambda c: reduce_ratfunc(as_ratfunc(c, E.var or "t"), field))


def reduce_scalar(c, field):
    c = rat(c)
    if c.denominator % field.p == 0:
        raise ZeroDivisionError(f"denominator divisible by {field.p}")
    return field.element(c.numerator) / field.element(c.denominator)


def reduce_ratfunc(f: RatFunc, field) -> RatFunc:
    return RatFunc(f.num.map_coeffs(lambda c: reduce_scalar(c, field)), f.den.map_coeffs(lambda c: reduce_scalar(c, field)))


def reduce_poly(f: Poly, field) -> Poly:
    return f.map_coeffs(lambda c: reduce_scalar(c, field))
