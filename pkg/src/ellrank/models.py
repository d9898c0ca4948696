"""Derived curves and points for Nagao's family, built once and cached.

The t-line model is the minimal Weierstrass model over Q(t) of the Jacobian
of Nagao's quartic; it is even in t and descends to the rational model over
Q(u), u = t^2.  The z-line model is the base change t = (23550 - z^2)/(2z),
over which the quartic's leading coefficient becomes a square.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import QuadExt, RatFunc, as_ratfunc
from .ellcurve import CurvePoint, WeierstrassCurve, descend_even, minimal_model, quartic_to_weierstrass
from .fileformat import kv_dict, parse_curve_file, parse_function, parse_points_file, read_fixture
from .mestre import nagao_extra_point, nagao_model, nagao_zero_point


@lru_cache(maxsize=None)
def eq3_curve() -> WeierstrassCurve:
    """The shipped minimal model over Q(u)."""
    return parse_curve_file(read_fixture("eq3_minimal.txt"), "eq3_minimal.txt")


@lru_cache(maxsize=None)
def _t_line():
    E, mm = quartic_to_weierstrass(nagao_model(), nagao_zero_point())
    M, iso = minimal_model(E)
    return M, mm.then(iso)


def t_line_model() -> WeierstrassCurve:
    return _t_line()[0]


def t_line_map():
    """ModelMap from Nagao's quartic to the t-line model."""
    return _t_line()[1]


def w_generators_computed() -> list[CurvePoint]:
    """Images of (a_i, +q(a_i)), i = 1..12, and of the thirteenth point."""
    m = nagao_model()
    mm = t_line_map()
    pts = [mm.forward(P) for P in m.points[:12]]
    pts.append(mm.forward(nagao_extra_point()))
    return pts


@lru_cache(maxsize=None)
def w_generators() -> tuple[CurvePoint, ...]:
    """The 13 generators of W on the t-line model (shipped fixture)."""
    var, pts = parse_points_file(read_fixture("nagao_points.txt"), "nagao_points.txt")
    return tuple(CurvePoint(x, y) for x, y in pts)


@lru_cache(maxsize=None)
def q_point() -> CurvePoint:
    """The fourteenth point on the Q(u) model, over Q(sqrt(-3))."""
    d = kv_dict(read_fixture("q_point.txt"), "q_point.txt")
    var = d.get("var", "u")
    return CurvePoint(parse_function(d["X"], var), parse_function(d["Y"], var))


def z_substitution() -> RatFunc:
    z = RatFunc.gen("z")
    return (z * z * -1 + 23550) / (z * 2)


@lru_cache(maxsize=None)
def _z_line():
    phi = z_substitution()
    quartic = nagao_model().substitute(phi)
    x0, y0 = nagao_zero_point()
    zero = (x0.compose(phi), y0.compose(phi))
    E, mm = quartic_to_weierstrass(quartic, zero)
    M, iso = minimal_model(E)
    return M, mm.then(iso), quartic


def z_line_model() -> WeierstrassCurve:
    return _z_line()[0]


def z_generators() -> list[CurvePoint]:
    """13 independent points over Q(z): images of (a_i, +q(a_i)) for i = 1..11,
    the thirteenth point and one point at infinity.

    The twelve a-points alone only span rank 11.
    """
    M, mm, quartic = _z_line()
    phi = z_substitution()
    pts = [mm.forward(P) for P in quartic.points[:11]]
    ex, ey = nagao_extra_point()
    pts.append(mm.forward((ex.compose(phi), ey.compose(phi))))
    pts.append(mm.forward(("inf", 1)))
    return pts


def pullback_point(P: CurvePoint, phi: RatFunc) -> CurvePoint:
    if P.is_zero:
        return P
    return CurvePoint(as_ratfunc(P.x).compose(phi), as_ratfunc(P.y).compose(phi))


def sqrt_minus_3() -> QuadExt:
    return QuadExt.sqrt_of(-3)


__all__ = [
    "descend_even",
    "eq3_curve",
    "pullback_point",
    "q_point",
    "sqrt_minus_3",
    "t_line_map",
    "t_line_model",
    "w_generators",
    "w_generators_computed",
    "z_generators",
    "z_line_model",
    "z_substitution",
]
