"""Canonical heights on elliptic curves over k(t).

Two independent methods:

* ``shioda_height``: 2 chi + 2 (P.O) - sum of fibre contributions, with the
  component hit by P at an I_n fibre read off from v(2y) (min(v, n/2));
* ``canonical_height_limit``: deg_x(2^k P) / 4^k with x-only doubling, rounded
  to the denominator bound once the error bound allows it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from .algebra import Poly, RatFunc, as_ratfunc, conj
from .ellcurve import CurvePoint, WeierstrassCurve, pullback_square
from .kodaira import FibreConfiguration, fibre_configuration


class UnsupportedFibreError(ValueError):
    pass


def _rf(E: WeierstrassCurve, c) -> RatFunc:
    return as_ratfunc(c, E.var or "t")


def _vinf(f: RatFunc) -> int | float:
    return f.valuation("inf")


def intersection_with_zero(E: WeierstrassCurve, P: CurvePoint, chi: int) -> mpq:
    """(P.O): poles of x at finite places plus at infinity in the weighted chart."""
    if P.is_zero:
        return mpq(-chi)
    x = _rf(E, P.x)
    finite = x.den.degree
    at_inf = max(0, -(_vinf(x) + 2 * chi))
    return mpq(finite + at_inf, 2)


def _component_index(E, P: CurvePoint, place, n: int, chi: int) -> int:
    """min(i, n - i) for the component of an I_n fibre met by P (0 = identity)."""
    x, y = _rf(E, P.x), _rf(E, P.y)
    A = _rf(E, E.a4)
    if place.is_infinite:
        vx = _vinf(x) + 2 * chi
        if vx < 0:
            return 0
        vy = _vinf(y) + 3 * chi if y else math.inf
        vd = _vinf(x * x * 3 + A) + 4 * chi if (x * x * 3 + A) else math.inf
    else:
        pi = place.poly
        vx = x.valuation(pi)
        if vx < 0:
            return 0
        vy = y.valuation(pi) if y else math.inf
        vd = (x * x * 3 + A).valuation(pi) if (x * x * 3 + A) else math.inf
    if vy <= 0 or vd <= 0:
        return 0
    return int(min(vy, mpq(n, 2)))


def fibre_contributions(E: WeierstrassCurve, P: CurvePoint, config: FibreConfiguration) -> list:
    """[(place, type, index, contribution)] over the reducible fibres."""
    out = []
    for place, ft in config.reducible():
        if not ft.multiplicative:
            raise UnsupportedFibreError(f"component identification not implemented for {ft.name}; use the limit method")
        i = 0 if P.is_zero else _component_index(E, P, place, ft.n, config.chi)
        out.append((place, ft, i, mpq(i * (ft.n - i), ft.n) * place.degree))
    return out


def shioda_height(E: WeierstrassCurve, P: CurvePoint, config: FibreConfiguration | None = None) -> mpq:
    if P.is_zero:
        return mpq(0)
    if not E.contains(P):
        raise ValueError("point is not on the curve")
    if config is None:
        config = fibre_configuration(E)
    chi = config.chi
    po = intersection_with_zero(E, P, chi)
    contr = sum((c for *_, c in fibre_contributions(E, P, config)), mpq(0))
    return 2 * chi + 2 * po - contr


# ------------------------------------------------------------- limit method
def denominator_bound(config: FibreConfiguration) -> int:
    lcm = 1
    for _, ft in config.reducible():
        lcm = lcm * ft.components // math.gcd(lcm, ft.components)
    return 2 * lcm


def error_bound(config: FibreConfiguration) -> mpq:
    worst = mpq(0)
    for place, ft in config.reducible():
        n = ft.components
        worst += mpq((n // 2) * (n - n // 2), n) * place.degree
    return 2 * config.chi + worst


def x_double(E: WeierstrassCurve, x: RatFunc) -> RatFunc | None:
    """x(2P) on a short model; None when 2P = O."""
    A, B = _rf(E, E.a4), _rf(E, E.a6)
    den = (x**3 + A * x + B) * 4
    if not den:
        return None
    x2 = x * x
    return (x2 * x2 - A * x2 * 2 - B * x * 8 + A * A) / den


def canonical_height_limit(E: WeierstrassCurve, P: CurvePoint, config: FibreConfiguration | None = None, steps: int | None = None) -> mpq:
    """Exact height from deg_x(2^k P)/4^k with k chosen from the error bound."""
    if P.is_zero:
        return mpq(0)
    if not E.short:
        raise ValueError("expected a short model")
    if config is None:
        config = fibre_configuration(E)
    N = denominator_bound(config)
    C = error_bound(config)
    if steps is None:
        steps = 0
        while mpq(4) ** steps <= 2 * N * C:
            steps += 1
    x = _rf(E, P.x)
    for _ in range(steps):
        x = x_double(E, x)
        if x is None:
            return mpq(0)
    approx = mpq(x.map_degree(), 4**steps)
    return mpq(round(approx * N), N)


# --------------------------------------------------------------- pairings
def height_pairing(E, P, Q, config=None, height=None) -> mpq:
    h = height or (lambda R: shioda_height(E, R, config))
    return (h(E.add(P, Q)) - h(P) - h(Q)) / 2


@dataclass
class GramMatrix:
    entries: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def rank(self) -> int:
        return exact_rank(self.entries)

    def determinant(self) -> Fraction:
        return exact_det(self.entries)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(n))

    def is_positive_semidefinite(self) -> bool:
        """Symmetric with nonnegative pivots in symmetric Gaussian elimination."""
        if not self.is_symmetric():
            return False
        m = [[Fraction(int(c.numerator), int(c.denominator)) for c in row] for row in self.entries]
        n = len(m)
        for k in range(n):
            if m[k][k] < 0:
                return False
            if m[k][k] == 0:
                if any(m[k][j] for j in range(k, n)):
                    return False
                continue
            for i in range(k + 1, n):
                f = m[i][k] / m[k][k]
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
        return True


def _to_fractions(rows) -> list:
    return [[Fraction(int(mpq(c).numerator), int(mpq(c).denominator)) for c in row] for row in rows]


def exact_rank(rows) -> int:
    m = _to_fractions(rows)
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def exact_det(rows) -> Fraction:
    m = _to_fractions(rows)
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def gram(E: WeierstrassCurve, points, config: FibreConfiguration | None = None, height=None) -> GramMatrix:
    points = list(points)
    for P in points:
        if not E.contains(P):
            raise ValueError("point is not on the curve")
    if not points:
        return GramMatrix([])
    if height is None:
        if config is None:
            config = fibre_configuration(E)
        height = lambda R: shioda_height(E, R, config)  # noqa: E731
    h = [height(P) for P in points]
    n = len(points)
    G = [[mpq(0)] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = h[i]
        for j in range(i + 1, n):
            G[i][j] = G[j][i] = (height(E.add(points[i], points[j])) - h[i] - h[j]) / 2
    return GramMatrix(G)


# -------------------------------------------------------------- norm map
def sigma_t(P: CurvePoint) -> CurvePoint:
    """t -> -t on the coordinates."""
    if P.is_zero:
        return P
    var = as_ratfunc(P.x).var
    minus_t = RatFunc(Poly([0, -1], var), reduced=True)
    return CurvePoint(as_ratfunc(P.x).compose(minus_t), as_ratfunc(P.y).compose(minus_t))


def norm_map(E_u: WeierstrassCurve, P: CurvePoint, t_var: str = "t") -> CurvePoint:
    """P + sigma(P) on the pullback to Q(t), returned over Q(u)."""
    E_t = pullback_square(E_u, t_var)
    S = E_t.add(P, sigma_t(P))
    if S.is_zero:
        return S
    if sigma_t(S) != S:
        raise ArithmeticError("norm is not fixed by t -> -t")
    u_var = E_u.var or "u"
    down = lambda f: RatFunc(f.num.even_part_in(u_var), f.den.even_part_in(u_var))  # noqa: E731
    return CurvePoint(down(as_ratfunc(S.x)), down(as_ratfunc(S.y)))


def galois_conjugate(P: CurvePoint) -> CurvePoint:
    """sqrt(D) -> -sqrt(D) on every coefficient."""
    if P.is_zero:
        return P
    return CurvePoint(as_ratfunc(P.x).map_coeffs(conj), as_ratfunc(P.y).map_coeffs(conj))


# ------------------------------------------------------------ certificate
@dataclass
class Theorem1Report:
    sigma_moves_q: bool
    height_q: mpq
    height_difference: mpq
    rank_with_q: int
    rank_over_z: int | None
    conclusion: str
    failed: str | None = None

    @property
    def ok(self) -> bool:
        return self.failed is None


def theorem1_certificate(E: WeierstrassCurve, Q: CurvePoint, norm_points=None, z_rank: int | None = None, config=None) -> Theorem1Report:
    """Certify that Q adds a new independent direction.

    (i) sigma(Q) != Q; (ii) h(Q - sigma Q) > 0; (iii) the Gram matrix of the
    norm images together with Q has rank 7.  With ``z_rank`` = 13 the
    conclusion is rank >= 14 over Q(sqrt(-3), z): a point of the Q(z)-span
    is fixed by sigma, so Q - sigma Q would be torsion.
    """
    if not E.contains(Q):
        raise ValueError("Q is not on the curve")
    if config is None:
        config = fibre_configuration(E)
    sQ = galois_conjugate(Q)
    moves = sQ != Q
    hq = shioda_height(E, Q, config)
    hd = shioda_height(E, E.sub(Q, sQ), config) if moves else mpq(0)
    rank = None
    if norm_points is not None:
        rank = gram(E, list(norm_points) + [Q], config).rank
    failed = None
    if not moves:
        failed = "(i) sigma(Q) = Q"
    elif hd <= 0:
        failed = "(ii) h(Q - sigma Q) = 0"
    elif rank is not None and rank != 7:
        failed = f"(iii) rank of norm images with Q is {rank}, expected 7"
    if failed:
        conclusion = "refused"
    elif z_rank is not None:
        conclusion = f"rank >= {z_rank + 1} over Q(sqrt(-3), z)"
    else:
        conclusion = "Q is independent of every sigma-fixed subgroup"
    return Theorem1Report(moves, hq, hd, rank if rank is not None else -1, z_rank, conclusion, failed)


__all__ = [
    "GramMatrix",
    "Theorem1Report",
    "UnsupportedFibreError",
    "canonical_height_limit",
    "denominator_bound",
    "error_bound",
    "exact_det",
    "exact_rank",
    "fibre_contributions",
    "galois_conjugate",
    "gram",
    "height_pairing",
    "intersection_with_zero",
    "norm_map",
    "shioda_height",
    "sigma_t",
    "theorem1_certificate",
    "x_double",
]
