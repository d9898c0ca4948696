"""Search for a section with polynomial coordinates X = x0 u^2 + a u + b,
Y = c u^2 + d u + e on a rational elliptic surface whose only reducible
fibre is an I2 at u = infinity.

Such a section misses the zero section and passes through the node of the
fibre at infinity, which fixes the leading coefficient x0 of X.  Comparing
coefficients of Y^2 = X^3 + A X + B gives five equations in (a, b, c, d, e);
c, d, e are eliminated by hand, the remaining pair G1(a, b) = G2(a, b) = 0
by a resultant in b.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .algebra import (
    Poly,
    QuadExt,
    as_ratfunc,
    factor_rationals,
    format_poly,
    poly_gcd,
    rat,
    rat_sqrt,
    resultant,
    sqrt_quadext,
)
from .algebra.scalars import squarefree_part
from .ellcurve import CurvePoint, WeierstrassCurve
from .kodaira import INFINITY, local_type


@dataclass(frozen=True)
class NodeData:
    x0: object
    x1: object
    split: bool


@dataclass(frozen=True)
class AnsatzSolution:
    D: int
    X: Poly
    Y: Poly

    def point(self) -> CurvePoint:
        return CurvePoint(as_ratfunc(self.X, self.X.var), as_ratfunc(self.Y, self.Y.var))

    def key(self):
        return (self.D, [format_poly(self.X), format_poly(self.Y)])

    def __str__(self):
        return f"D = {self.D}\nX = {format_poly(self.X)}\nY = {format_poly(self.Y)}"


def _coeff_polys(E: WeierstrassCurve) -> tuple[Poly, Poly]:
    if not E.short:
        raise ValueError("expected a short model")
    var = E.var or "u"
    A, B = as_ratfunc(E.a4, var), as_ratfunc(E.a6, var)
    if not (A.is_polynomial() and B.is_polynomial()):
        raise ValueError("expected polynomial coefficients")
    return A.num, B.num


def node_at_infinity(E: WeierstrassCurve) -> NodeData:
    """Double and simple root of the fibre cubic at u = infinity (x' = x / u^2)."""
    ft = local_type(E, INFINITY)
    if ft.name != "I2":
        raise ValueError(f"fibre at infinity is {ft.name}, not I2")
    A, B = _coeff_polys(E)
    a4, a6 = A[4], B[6]
    # x^3 + a4 x + a6 = (x - x0)^2 (x - x1): a4 = -3 x0^2, a6 = 2 x0^3, x1 = -2 x0
    x0 = rat(a6) * -3 / (rat(a4) * 2)
    x1 = -2 * x0
    return NodeData(x0, x1, rat_sqrt(x0 - x1) is not None)


# ------------------------------------------------------ arithmetic in Q[a, b]
def _ab_const(c) -> Poly:
    return Poly((Poly((c,), "a"),), "b")


_A = Poly((Poly((0, 1), "a"),), "b")
_B = Poly((Poly((0,), "a"), Poly((1,), "a")), "b")


def _conv(f: list, g: list) -> list:
    out = [_ab_const(0)] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + x * y
    return out


def _f_coefficients(E: WeierstrassCurve, node: NodeData) -> list:
    """u^k coefficients (k = 0..6) of X^3 + A X + B as elements of Q[a, b]."""
    A, B = _coeff_polys(E)
    X = [_B, _A, _ab_const(node.x0)]
    X3 = _conv(_conv(X, X), X)
    AX = _conv([_ab_const(A[i]) for i in range(5)], X)
    out = []
    for k in range(7):
        v = X3[k] + (AX[k] if k < len(AX) else 0) + B[k]
        out.append(v)
    return out


def build_coefficient_system(E: WeierstrassCurve, node: NodeData | None = None) -> list:
    """[f0, f1, f2, f3, f4] with the equations
    f4 = c^2, f3 = 2cd, f2 = 2ce + d^2, f1 = 2de, f0 = e^2.
    """
    node = node or node_at_infinity(E)
    f = _f_coefficients(E, node)
    if f[6] or f[5]:
        raise ValueError("u^6 / u^5 coefficients do not vanish: node data inconsistent")
    return f[:5]


def residuals(system: list, a, b, c, d, e) -> list:
    f = [_eval_ab(g, a, b) for g in system]
    return [
        f[4] - c * c,
        f[3] - 2 * c * d,
        f[2] - 2 * c * e - d * d,
        f[1] - 2 * d * e,
        f[0] - e * e,
    ]


def _eval_ab(g: Poly, a, b):
    out = 0
    for i, coeff in enumerate(g.coeffs):
        inner = coeff(a) if isinstance(coeff, Poly) else coeff
        out = out + inner * b**i
    return out


def _in_b_over(g: Poly, a) -> Poly:
    """g(a, b) with a specialized, as a Poly in b."""
    return Poly([c(a) if isinstance(c, Poly) else c for c in g.coeffs], "b")


# ---------------------------------------------------------------- solving
def eliminant(system: list) -> tuple[Poly, Poly, Poly]:
    """(G1, G2, R): the two equations left after removing c, d, e, and Res_b."""
    f0, f1, f2, f3, f4 = system
    H = f2 * f4 * 4 - f3 * f3
    G1 = f3 * H - f1 * f4 * f4 * 8
    G2 = H * H - f0 * f4 * f4 * f4 * 64
    R = resultant(G1, G2)
    if isinstance(R, Poly) and R.var == "b":
        R = R[0]
    return G1, G2, R


def _roots_deg_le_2(f: Poly) -> list:
    """Roots of a rational polynomial of degree 1 or 2 in Q or Q(sqrt D)."""
    if f.degree == 1:
        return [-rat(f[0]) / rat(f[1])]
    c, b, a = (rat(f[i]) for i in range(3))
    disc = b * b - 4 * a * c
    r = rat_sqrt(disc)
    if r is not None:
        return [(-b + r) / (2 * a), (-b - r) / (2 * a)]
    num, den = int(disc.numerator), int(disc.denominator)
    D = squarefree_part(num * den)
    # sqrt(disc) = sqrt(num*den)/den = k sqrt(D)/den
    k = rat_sqrt(mpq(num * den, D))
    s = QuadExt(0, k / den, D)
    return [(s - b) / (2 * a), (-s - b) / (2 * a)]


def _roots_in_field(g: Poly, D: int) -> list:
    """Roots in Q(sqrt D) of a polynomial over Q(sqrt D), up to degree 2."""
    if g.degree <= 0:
        return []
    g = g.monic()
    if g.degree == 1:
        return [-g[0]]
    if g.degree == 2:
        b, c = g[1], g[0]
        disc = b * b - 4 * c
        s = sqrt_quadext(disc if isinstance(disc, QuadExt) else QuadExt(disc, 0, D)) if D != 1 else rat_sqrt(rat(disc))
        if s is None:
            return []
        return [(-b + s) / 2, (-b - s) / 2]
    return []


def _sqrt_in(x, D: int):
    if D == 1 or not isinstance(x, QuadExt):
        if isinstance(x, QuadExt):
            x = x.a if not x.b else x
        if not isinstance(x, QuadExt):
            r = rat_sqrt(rat(x))
            if r is not None:
                return r
            if D != 1:
                return sqrt_quadext(QuadExt(x, 0, D))
            return None
    return sqrt_quadext(x)


def _field_of(x) -> int:
    return x.D if isinstance(x, QuadExt) and x.b else 1


def _simplify(x):
    if isinstance(x, QuadExt) and not x.b:
        return rat(x.a)
    return x


def solve_system(system: list, var: str = "u", x0=None, diagnostics: list | None = None) -> list[AnsatzSolution]:
    """All solutions with a, b, c, d, e in Q or a quadratic field."""
    if x0 is None:
        raise ValueError("x0 (node) is required")
    f0, f1, f2, f3, f4 = system
    G1, G2, R = eliminant(system)
    candidates = []
    # generic branch c != 0
    if R:
        _, factors = factor_rationals(R if isinstance(R, Poly) else Poly((R,), "a"))
        a_values = []
        for g, _ in factors:
            if g.degree in (1, 2):
                a_values += _roots_deg_le_2(g)
            elif diagnostics is not None:
                diagnostics.append(f"eliminant factor of degree {g.degree} not solved")
    else:
        a_values = []
        if diagnostics is not None:
            diagnostics.append("resultant vanished identically")
    for a in a_values:
        D = _field_of(a)
        g = poly_gcd(_in_b_over(G1, a), _in_b_over(G2, a))
        for b in _roots_in_field(g, D):
            candidates += _complete(system, a, b, D)
    # degenerate branch c = 0: f4 = f3 = 0
    candidates += _c_zero_branch(system)
    out = {}
    for a, b, c, d, e in candidates:
        res = residuals(system, a, b, c, d, e)
        if any(res):
            if diagnostics is not None:
                diagnostics.append(f"discarded unverified candidate a = {a}")
            continue
        D = max((_field_of(v) for v in (a, b, c, d, e)), key=abs)
        X = Poly([_simplify(b), _simplify(a), x0], var)
        Y = Poly([_simplify(e), _simplify(d), _simplify(c)], var)
        sol = AnsatzSolution(D, X, Y)
        out[sol.key().__repr__()] = sol
    return sorted(out.values(), key=lambda s: (s.D, s.key()[1]))


def _complete(system, a, b, D) -> list:
    f = [_eval_ab(g, a, b) for g in system]
    if not f[4]:
        return []
    c = _sqrt_in(f[4], D)
    if c is None:
        return []
    out = []
    for cc in (c, -c):
        d = f[3] / (2 * cc)
        e = (f[2] - d * d) / (2 * cc)
        out.append((a, b, cc, d, e))
    return out


def _as_a_poly(c) -> Poly:
    return c if isinstance(c, Poly) else Poly((c,), "a")


def _c_zero_branch(system) -> list:
    """Solutions with c = 0: f4 = f3 = 0, f2 = d^2, f1 = 2de, f0 = e^2."""
    f0, f1, f2, f3, f4 = system
    if f4.degree <= 0:
        Ra = _as_a_poly(f4[0])
    else:
        Ra = _as_a_poly(resultant(f4, f3)[0] if isinstance(resultant(f4, f3), Poly) and resultant(f4, f3).var == "b" else resultant(f4, f3))
    if not Ra or Ra.degree <= 0:
        return []
    out = []
    _, factors = factor_rationals(Ra)
    for g, _ in factors:
        if g.degree > 2:
            continue
        for a in _roots_deg_le_2(g):
            D = _field_of(a)
            gb = poly_gcd(_in_b_over(f4, a), _in_b_over(f3, a))
            for b in _roots_in_field(gb, D):
                vals = [_eval_ab(h, a, b) for h in system]
                d = _sqrt_in(vals[2], D)
                if d is None:
                    continue
                for dd in (d, -d):
                    if dd:
                        e = vals[1] / (2 * dd)
                    else:
                        e = _sqrt_in(vals[0], D)
                        if e is None:
                            continue
                    out.append((a, b, 0, dd, e))
    return out


def find_extra_point(E: WeierstrassCurve, diagnostics: list | None = None) -> list[AnsatzSolution]:
    """Sections (X, Y) of degree (2, 2) through the node at infinity."""
    node = node_at_infinity(E)
    system = build_coefficient_system(E, node)
    sols = solve_system(system, E.var or "u", node.x0, diagnostics)
    for s in sols:
        if not E.contains(s.point()):
            raise ArithmeticError("solution failed on-curve verification")
    return sols


__all__ = [
    "AnsatzSolution",
    "NodeData",
    "build_coefficient_system",
    "eliminant",
    "find_extra_point",
    "node_at_infinity",
    "residuals",
    "solve_system",
]
