"""Square-split construction of genus-one quartics with many marked points.

For a monic p of degree 2n write p = q^2 - r with deg r <= n - 1; the curve
y^2 = r(x) then carries the points (a_i, +-q(a_i)) for every root a_i of p.
With n = 6 and a_i = b_i + t, a_{i+6} = b_i - t the x^5 coefficient of r is
s(b) * t^2, so seeds with s(b) = 0 give quartics over Q(t).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .algebra import Poly, RatFunc, as_ratfunc, rat, rat_sqrt, rational_roots, squarefree_decomposition
from .fileformat import kv_dict, parse_function, read_fixture


# ---------------------------------------------------------------- square split
def square_split(p: Poly) -> tuple[Poly, Poly]:
    """Return (q, r) with p = q^2 - r, q monic of degree n, deg r <= n - 1."""
    m = len(p.coeffs) - 1
    if m < 0 or m % 2:
        raise ValueError("square_split needs a polynomial of even degree")
    if not (p.lc == 1):
        raise ValueError("square_split needs a monic polynomial")
    n = m // 2
    e = list(reversed(p.coeffs))  # e[k] = coefficient of x^(2n-k)
    d = [e[0]]
    for k in range(1, n + 1):
        acc = e[k]
        for i in range(1, k):
            acc = acc - d[i] * d[k - i]
        d.append(acc * mpq(1, 2))
    q = Poly(list(reversed(d)), p.var)
    r = q * q - p
    assert len(r.coeffs) <= n
    return q, r


def seed_polynomial(b, var_t: str = "t", var_x: str = "x") -> Poly:
    """p(x) = prod (x - b_i - t)(x - b_i + t) over Q[t]."""
    t = Poly.gen(var_t)
    p = Poly([Poly([1], var_t)], var_x)
    for bi in b:
        bi = rat(bi)
        for sign in (1, -1):
            p = p * Poly([-(t * sign) - bi, Poly([1], var_t)], var_x)
    return p


def _s_raw(b) -> object:
    _, r = square_split(seed_polynomial(b))
    c5 = r[5]
    if not c5:
        return mpq(0)
    if not isinstance(c5, Poly) or len(c5.coeffs) != 3 or c5.coeffs[0] or c5.coeffs[1]:
        raise ArithmeticError("x^5 coefficient is not a multiple of t^2")
    return c5.coeffs[2]


def s_coefficient(b) -> object:
    """s(b_1..b_6): the x^5 coefficient of r divided by t^2."""
    b = [rat(x) for x in b]
    if len(b) != 6:
        raise ValueError("need six seed values")
    if len(set(b)) != 6:
        raise ValueError("seed values must be pairwise distinct")
    return _s_raw(b)


def search_b6(b5) -> list:
    """All rational b_6 with s(b_1..b_5, b_6) = 0 (roots of a univariate polynomial)."""
    b5 = [rat(x) for x in b5]
    if len(b5) != 5 or len(set(b5)) != 5:
        raise ValueError("need five distinct seed values")
    # s is a polynomial in b6 of degree <= 7; interpolate through 10 nodes
    nodes = [mpq(1000 + 7 * i) for i in range(10)]
    values = [_s_raw(b5 + [x]) for x in nodes]
    s_poly = _interpolate(nodes, values, "b")
    for x in (mpq(-3, 7), mpq(5, 11)):
        if s_poly(x) != _s_raw(b5 + [x]):
            raise ArithmeticError("interpolation of s failed")
    if not s_poly:
        raise ArithmeticError("s vanishes identically in b6")
    return [r for r in rational_roots(s_poly) if r not in b5]


def _interpolate(xs, ys, var: str) -> Poly:
    out = Poly((), var)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = Poly([1], var)
        den = mpq(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly([-xj, 1], var)
                den *= xi - xj
        out = out + basis * (yi / den)
    return out


# ------------------------------------------------------------- quartic models
@dataclass(frozen=True)
class MestreSeed:
    b: tuple

    def __post_init__(self):
        b = tuple(rat(x) for x in self.b)
        if len(b) != 6 or len(set(b)) != 6:
            raise ValueError("a seed is six distinct rationals")
        object.__setattr__(self, "b", b)

    def a_values(self, var: str = "t") -> list[RatFunc]:
        t = RatFunc.gen(var)
        return [t + bi for bi in self.b] + [bi - t for bi in self.b]


@dataclass
class QuarticModel:
    """y^2 = r0 + r1 x + ... + r4 x^4 over Q(var)."""

    coeffs: tuple
    var: str = "t"
    points: list = field(default_factory=list)
    scale: RatFunc | None = None

    def __post_init__(self):
        self.coeffs = tuple(as_ratfunc(c, self.var) for c in self.coeffs)
        if len(self.coeffs) != 5 or not self.coeffs[4]:
            raise ValueError("a quartic model needs five coefficients with r4 != 0")

    def poly(self) -> Poly:
        return Poly(self.coeffs, "x")

    def __call__(self, x):
        acc = self.coeffs[4]
        for c in reversed(self.coeffs[:4]):
            acc = acc * x + c
        return acc

    def contains(self, x, y) -> bool:
        return y * y == self(x)

    def substitute(self, phi: RatFunc) -> "QuarticModel":
        """Pull back along var <- phi (a RatFunc in a new variable)."""
        sub = lambda f: f.compose(phi)
        pts = [(sub(x), sub(y)) for x, y in self.points]
        return QuarticModel(tuple(sub(c) for c in self.coeffs), phi.var, pts, None)


def ratfunc_sqrt(f: RatFunc) -> RatFunc | None:
    """Square root in Q(t) or None."""
    if not f:
        return f
    lc = rat_sqrt(f.num.lc)
    if lc is None:
        return None
    parts = []
    for poly in (f.num.monic(), f.den):
        root = Poly([1], f.var)
        for g, k in squarefree_decomposition(poly) if len(poly.coeffs) > 1 else []:
            if k % 2:
                return None
            root = root * g ** (k // 2)
        parts.append(root)
    return RatFunc(parts[0] * lc, parts[1])


def raw_remainder(seed: MestreSeed) -> tuple[Poly, Poly]:
    """q and r of the square split, with coefficients in Q[t]."""
    return square_split(seed_polynomial(seed.b))


def derive_scale(seed: MestreSeed, target: QuarticModel) -> RatFunc:
    """The factor lambda with target = lambda * r_raw, certified to be a square."""
    _, r = raw_remainder(seed)
    if len(r.coeffs) != 5:
        raise ValueError("seed does not give a quartic (s(b) != 0)")
    ratio = None
    for c_raw, c_tgt in zip(r.coeffs, target.coeffs):
        c_raw = as_ratfunc(c_raw, target.var)
        if not c_raw:
            if c_tgt:
                raise ArithmeticError("target is not a multiple of the raw remainder")
            continue
        quo = c_tgt / c_raw
        if ratio is None:
            ratio = quo
        elif quo != ratio:
            raise ArithmeticError("target is not a multiple of the raw remainder")
    if ratfunc_sqrt(ratio) is None:
        raise ArithmeticError("scale is not a square in Q(t)")
    return ratio


def build_quartic(seed: MestreSeed, scale=1, var: str = "t") -> QuarticModel:
    """y^2 = scale * r(x) with the 24 points (a_i, +-w q(a_i)), w^2 = scale."""
    q, r = raw_remainder(seed)
    if len(r.coeffs) != 5:
        raise ValueError("s(b) != 0: the remainder has degree 5")
    scale = as_ratfunc(scale, var)
    w = ratfunc_sqrt(scale)
    if w is None:
        raise ValueError("scale must be a square in Q(t)")
    coeffs = tuple(as_ratfunc(c, var) * scale for c in r.coeffs)
    qf = Poly([as_ratfunc(c, var) for c in q.coeffs], "x")
    pts = []
    for a in seed.a_values(var):
        y = qf(a) * w
        pts.append((a, y))
    pts += [(x, -y) for x, y in pts]
    model = QuarticModel(coeffs, var, pts, scale)
    for x, y in pts:
        assert model.contains(x, y)
    return model


# -------------------------------------------------------------------- conics
@dataclass(frozen=True)
class ConicParam:
    A: object
    B: object
    t_of_z: RatFunc
    u_of_z: RatFunc

    def identity_holds(self) -> bool:
        return conic_identity(self.A, self.B, self.t_of_z, self.u_of_z)


def conic_identity(A, B, t: RatFunc, u: RatFunc) -> bool:
    return u * u - (t * t * B + A) == 0


def conic_parametrize(A, B, base, var: str = "z") -> ConicParam:
    """Rational parametrization of u^2 = A + B t^2.

    ``base`` is a point (t0, u0), parametrized by the slope z of the chord
    u - u0 = z (t - t0); or the string ``"inf"`` when B is a square beta^2,
    using the lines u = beta (t + z) through a point at infinity.
    """
    A, B = rat(A), rat(B)
    if not B:
        raise ValueError("B must be nonzero")
    z = RatFunc.gen(var)
    if isinstance(base, str):
        if base != "inf":
            raise ValueError("base must be (t0, u0) or 'inf'")
        beta = rat_sqrt(B)
        if beta is None:
            raise ValueError("the conic has no rational point at infinity (B not a square)")
        t = (A / B - z * z) / (z * 2)
        u = (t + z) * beta
    else:
        t0, u0 = rat(base[0]), rat(base[1])
        if u0 * u0 != A + B * t0 * t0:
            raise ValueError("base point is not on the conic")
        t = (z * z * t0 - z * (2 * u0) + B * t0) / (z * z - B)
        u = z * (t - t0) + u0
    param = ConicParam(A, B, t, u)
    assert param.identity_holds()
    return param


def find_conic_point(A, B, bound: int = 50):
    """Small rational point (t0, u0) on u^2 = A + B t^2 by search, or None."""
    A, B = rat(A), rat(B)
    for n in range(0, bound + 1):
        for t0 in ((n,) if n == 0 else (n, -n)):
            r = rat_sqrt(A + B * t0 * t0)
            if r is not None:
                return mpq(t0), r
    return None


# ------------------------------------------------------------ published data
def _seed(name: str) -> MestreSeed:
    d = kv_dict(read_fixture("seeds.txt"), "seeds.txt")
    return MestreSeed(tuple(int(x) for x in d[name].split(",")))


def nagao_seed() -> MestreSeed:
    return _seed("nagao")


def mestre_seed() -> MestreSeed:
    return _seed("mestre")


def _quartic_fixture(name: str) -> QuarticModel:
    from .fileformat import parse_curve_file

    return parse_curve_file(read_fixture(name), name)


def nagao_quartic() -> QuarticModel:
    """The published Nagao quartic over Q(t)."""
    return _quartic_fixture("nagao_quartic.txt")


def mestre_quartic() -> QuarticModel:
    return _quartic_fixture("mestre_quartic.txt")


def published_conics() -> dict:
    d = kv_dict(read_fixture("conics.txt"), "conics.txt")
    out = {}
    for name in ("mestre", "nagao"):
        entry = {"A": rat(d[f"{name}.A"]), "B": rat(d[f"{name}.B"])}
        for key in ("t", "u"):
            if f"{name}.{key}" in d:
                entry[key] = parse_function(d[f"{name}.{key}"], "z")
        out[name] = entry
    return out


def nagao_model() -> QuarticModel:
    """Nagao's quartic rebuilt from the seed, with its 24 marked points."""
    t = RatFunc.gen("t")
    return build_quartic(nagao_seed(), 1 / (t * t))


def mestre_model() -> QuarticModel:
    t = RatFunc.gen("t")
    return build_quartic(mestre_seed(), mpq(4, 81) / (t * t))


def nagao_zero_point() -> tuple[RatFunc, RatFunc]:
    """(t, 2544297600 - 87059232 t + 836160 t^2), the marked point at a_6 = t."""
    t = RatFunc.gen("t")
    return t, t * t * 836160 - t * 87059232 + 2544297600


def nagao_extra_point(published: bool = False) -> tuple[RatFunc, RatFunc]:
    """The thirteenth point ((t + 703)/15, y).

    The printed y does not satisfy the printed quartic; multiplying it by
    1248 does.  ``published=True`` returns the printed value unchanged.
    """
    t = RatFunc.gen("t")
    x = (t + 703) / 15
    y = (t**3 * -224 - t * t * 844 + t * 900484 + 2161725) / 75
    if published:
        return x, y
    return x, y * 1248
