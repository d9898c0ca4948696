"""Singular fibres of elliptic surfaces over P^1.

Types come from the valuations of (c4, c6, Delta) on a minimal model; this
table is valid in residue characteristic 0 and p >= 5.  Places over Q are
the irreducible factors of Delta plus the point at infinity; over F_p only
the geometric configuration (type and number of geometric points) is used.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .algebra import Poly, RatFunc, as_ratfunc, factor_rationals, rat, rat_sqrt, valuation
from .algebra import modp
from .ellcurve import WeierstrassCurve, chi_of, minimal_model


class NotMinimalError(ValueError):
    pass


@dataclass(frozen=True)
class Place:
    """A monic irreducible polynomial, or None for the point at infinity."""

    poly: Poly | None = None

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def __str__(self):
        if self.poly is None:
            return "inf"
        from .algebra import format_poly

        return format_poly(self.poly)


INFINITY = Place(None)

_ADDITIVE = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}
_COMPONENTS = {"I0": 1, "II": 1, "III": 2, "IV": 3, "I0*": 5, "IV*": 7, "III*": 8, "II*": 9}


@dataclass(frozen=True)
class FibreType:
    symbol: str
    n: int = 0
    split: bool | None = None

    @property
    def components(self) -> int:
        if self.symbol == "In":
            return self.n
        if self.symbol == "In*":
            return self.n + 5
        return _COMPONENTS[self.symbol]

    @property
    def euler(self) -> int:
        if self.symbol == "In":
            return self.n
        if self.symbol == "In*":
            return self.n + 6
        return {"I0": 0, "II": 2, "III": 3, "IV": 4, "I0*": 6, "IV*": 8, "III*": 9, "II*": 10}[self.symbol]

    @property
    def name(self) -> str:
        if self.symbol == "In":
            return f"I{self.n}"
        if self.symbol == "In*":
            return f"I{self.n}*"
        return self.symbol

    @property
    def multiplicative(self) -> bool:
        return self.symbol == "In" and self.n > 0

    def __str__(self):
        return self.name


def classify(vA, vB, vD) -> FibreType:
    """Kodaira type from v(a4), v(a6), v(Delta) of a short model (char 0 or p >= 5)."""
    if vA >= 4 and vB >= 6:
        raise NotMinimalError("model is not minimal at this place")
    if vD == 0:
        return FibreType("I0")
    if vA == 0:
        return FibreType("In", vD)
    if vD > 6 and vA == 2 and vB == 3:
        return FibreType("In*", vD - 6)
    if vD in _ADDITIVE:
        return FibreType(_ADDITIVE[vD])
    raise ValueError(f"inconsistent valuations ({vA}, {vB}, {vD})")


def _short_polys(E: WeierstrassCurve) -> tuple[Poly, Poly]:
    if not E.short:
        raise ValueError("expected a short Weierstrass model")
    var = E.var or "t"
    A, B = as_ratfunc(E.a4, var), as_ratfunc(E.a6, var)
    if not (A.is_polynomial() and B.is_polynomial()):
        raise NotMinimalError("coefficients must be polynomials")
    return A.num, B.num


def _disc(A: Poly, B: Poly) -> Poly:
    return (A**3 * 4 + B**2 * 27) * (-16)


def _deg(f: Poly) -> int | float:
    return f.degree if f else -math.inf


def _inf_valuations(A: Poly, B: Poly, chi: int):
    vA = 4 * chi - _deg(A)
    vB = 6 * chi - _deg(B)
    vD = 12 * chi - _deg(_disc(A, B))
    return vA, vB, vD


def _residue_is_square(value: RatFunc | Poly, place: Place) -> bool | None:
    """Square test in the residue field; decided for degree-1 places only."""
    if place.degree != 1:
        return None
    if place.is_infinite:
        f = as_ratfunc(value)
        v = f.valuation("inf")
        lead = f.num.lc / f.den.lc
        if v % 2:
            return None
        return rat_sqrt(lead) is not None
    root = -place.poly.coeffs[0]
    x = as_ratfunc(value)(root)
    return rat_sqrt(x) is not None


def local_type(E: WeierstrassCurve, place: Place) -> FibreType:
    """Kodaira type of a minimal short model over Q(t) at a place.

    For I_n the node is split when 6*a6 (the tangent-slope discriminant up to
    squares) is a square in the residue field.
    """
    A, B = _short_polys(E)
    if place.is_infinite:
        chi = chi_of(E)
        vA, vB, vD = _inf_valuations(A, B, chi)
    else:
        vA = valuation(A, place.poly) if A else math.inf
        vB = valuation(B, place.poly) if B else math.inf
        vD = valuation(_disc(A, B), place.poly)
    ft = classify(vA, vB, vD)
    if ft.multiplicative:
        if place.is_infinite:
            # leading term of 6 B / s^(6 chi) at s = 1/t
            lead = B.coeffs[6 * chi] if len(B.coeffs) > 6 * chi else 0
            split = rat_sqrt(lead * 6) is not None if lead else None
        else:
            split = _residue_is_square(as_ratfunc(B * 6), place)
        ft = FibreType("In", ft.n, split)
    return ft


@dataclass
class FibreConfiguration:
    entries: list = field(default_factory=list)
    chi: int = 0
    rational_surface: bool = False

    @property
    def euler_sum(self) -> int:
        return sum(pl.degree * ft.euler for pl, ft in self.entries)

    def reducible(self) -> list:
        return [(pl, ft) for pl, ft in self.entries if ft.components > 1]

    def correction(self) -> int:
        """Sum of (m_v - 1) over geometric points."""
        return sum(pl.degree * (ft.components - 1) for pl, ft in self.entries)

    def geometric(self) -> Counter:
        out = Counter()
        for pl, ft in self.entries:
            out[ft.name] += pl.degree
        return out


def fibre_configuration(E: WeierstrassCurve) -> FibreConfiguration:
    """All singular fibres of a globally minimal short model over Q(t)."""
    A, B = _short_polys(E)
    D = _disc(A, B)
    if not D:
        raise ValueError("singular generic fibre")
    if D.degree <= 0:
        raise ValueError("constant discriminant: isotrivial surfaces are not supported")
    chi = chi_of(E)
    entries = []
    _, factors = factor_rationals(D)
    for g, _ in sorted(factors, key=lambda gm: (gm[0].degree, [str(c) for c in gm[0].coeffs])):
        pl = Place(g.monic())
        entries.append((pl, local_type(E, pl)))
    ft_inf = local_type(E, INFINITY)
    if ft_inf.symbol != "I0":
        entries.append((INFINITY, ft_inf))
    cfg = FibreConfiguration(entries, chi, chi == 1)
    if cfg.euler_sum != 12 * chi:
        raise ArithmeticError(f"Euler sum {cfg.euler_sum} != 12 chi = {12 * chi}")
    return cfg


def is_rational_surface(E: WeierstrassCurve) -> bool:
    """True when a minimal model has deg a_i <= i for all i (and is not constant)."""
    M = E
    try:
        _short_polys(E)
    except (NotMinimalError, ValueError):
        M, _ = minimal_model(E)
    return chi_of(M) == 1


def shioda_tate_rank(config: FibreConfiguration, rank_ns: int) -> int:
    """rank E = rank NS - 2 - sum (m_v - 1)."""
    corr = config.correction()
    if rank_ns < 2 + corr:
        raise ValueError(f"rank NS {rank_ns} is below the trivial lattice rank {2 + corr}")
    return rank_ns - 2 - corr


# ----------------------------------------------------------- reduction mod p
def _int_coeffs(f: Poly, p: int) -> list | None:
    out = []
    for c in f.coeffs:
        c = rat(c)
        if c.denominator % p == 0:
            return None
        out.append(int(c.numerator) * pow(int(c.denominator), -1, p) % p)
    return modp.trim(out)


def _val_modp(f: list, g: list, p: int) -> int | float:
    if not f:
        return math.inf
    v = 0
    while True:
        q, r = modp.divmod_(f, g, p)
        if r:
            return v
        f = q
        v += 1


def geometric_configuration_mod_p(E: WeierstrassCurve, p: int, chi: int | None = None) -> Counter | None:
    """Geometric fibre multiset {type: #points} of the reduction mod p, None if the
    reduction is not integral, not minimal, or has singular generic fibre."""
    A, B = _short_polys(E)
    if chi is None:
        chi = chi_of(E)
    Ap, Bp = _int_coeffs(A, p), _int_coeffs(B, p)
    if Ap is None or Bp is None:
        return None
    Dp = modp.trim(modp.scale(modp.add(modp.scale(modp.mul(modp.mul(Ap, Ap, p), Ap, p), 4, p), modp.scale(modp.mul(Bp, Bp, p), 27, p), p), -16 % p, p))
    if not Dp:
        return None
    out = Counter()
    try:
        for g, _ in modp.factor(Dp, p):
            ft = classify(_val_modp(Ap, g, p), _val_modp(Bp, g, p), _val_modp(Dp, g, p))
            out[ft.name] += len(g) - 1
        deg = lambda f: len(f) - 1 if f else -math.inf  # noqa: E731
        ft = classify(4 * chi - deg(Ap), 6 * chi - deg(Bp), 12 * chi - deg(Dp))
    except NotMinimalError:
        return None
    if ft.symbol != "I0":
        out[ft.name] += 1
    return out


__all__ = [
    "FibreConfiguration",
    "FibreType",
    "INFINITY",
    "NotMinimalError",
    "Place",
    "classify",
    "fibre_configuration",
    "geometric_configuration_mod_p",
    "is_rational_surface",
    "local_type",
    "shioda_tate_rank",
]
