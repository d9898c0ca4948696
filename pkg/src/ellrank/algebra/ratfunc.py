"""Rational functions num/den over a coefficient field, kept in lowest terms."""

from __future__ import annotations

import math

from .poly import Poly, poly_gcd, valuation


class RatFunc:
    """Element of K(var): ``num / den`` with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False, var: str | None = None):
        if not isinstance(num, Poly):
            num = Poly((num,), var or (den.var if isinstance(den, Poly) else "t"))
        if den is None:
            den = Poly((1,), num.var)
        elif not isinstance(den, Poly):
            den = Poly((den,), num.var)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            if not num:
                den = Poly((1,), num.var)
            else:
                g = poly_gcd(num, den)
                if len(g.coeffs) > 1:
                    num, den = num / g, den / g
                lc = den.lc
                if not (lc == 1):
                    num, den = num / lc, den / lc
        self.num = num
        self.den = den

    @property
    def var(self) -> str:
        return self.num.var

    @classmethod
    def gen(cls, var: str = "t", one=1) -> "RatFunc":
        return cls(Poly.gen(var, one), reduced=True)

    @classmethod
    def const(cls, c, var: str = "t") -> "RatFunc":
        return cls(Poly((c,), var), reduced=True)

    def _coerce(self, other):
        """Other operand as a RatFunc in our variable; None if it lives outside."""
        if isinstance(other, RatFunc):
            if other.var != self.var:
                return None
            return other
        if isinstance(other, Poly):
            if other.var != self.var:
                return None
            return RatFunc(other, reduced=True)
        return RatFunc(Poly((other,), self.var), reduced=True)

    def is_polynomial(self) -> bool:
        return len(self.den.coeffs) == 1

    def is_constant(self) -> bool:
        return self.is_polynomial() and len(self.num.coeffs) <= 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeffs[0] if self.num.coeffs else 0

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if len(b.coeffs) == 1 and len(d.coeffs) == 1:
            return RatFunc(a + c, b, reduced=True)
        if b == d:
            return RatFunc(a + c, b)
        g = poly_gcd(b, d)
        if len(g.coeffs) == 1:
            return RatFunc(a * d + c * b, b * d, reduced=True)
        d1 = d / g
        return RatFunc(a * d1 + c * (b / g), b * d1)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, (RatFunc, Poly)):
            if not other:
                return RatFunc(Poly((), self.var), reduced=True)
            return RatFunc(self.num * other, self.den, reduced=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if not a or not c:
            return RatFunc(Poly((), self.var), reduced=True)
        g1 = poly_gcd(a, d) if len(d.coeffs) > 1 else None
        g2 = poly_gcd(c, b) if len(b.coeffs) > 1 else None
        if g1 is not None and len(g1.coeffs) > 1:
            a, d = a / g1, d / g1
        if g2 is not None and len(g2.coeffs) > 1:
            c, b = c / g2, b / g2
        num, den = a * c, b * d
        lc = den.lc
        if not (lc == 1):
            num, den = num / lc, den / lc
        return RatFunc(num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        lc = self.num.lc
        return RatFunc(self.den / lc, self.num / lc, reduced=True)

    def __truediv__(self, other):
        if not isinstance(other, (RatFunc, Poly)):
            if not other:
                raise ZeroDivisionError
            return RatFunc(self.num / other, self.den, reduced=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, reduced=True)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Poly):
            if other.var != self.var:
                return NotImplemented
            return self.is_polynomial() and self.num == other
        if not other:
            return not self.num
        return self.is_constant() and self.num == other

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        from .syntax import format_poly

        if self.is_polynomial():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    # ---------------------------------------------------------------- analysis
    def __call__(self, value):
        """Evaluate at a scalar (or substitute a Poly / RatFunc)."""
        if isinstance(value, (RatFunc, Poly)):
            return self.compose(value)
        d = self.den(value)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(value) / d

    def compose(self, inner) -> "RatFunc":
        """Substitute ``var <- inner`` where inner is a Poly or RatFunc (in any variable)."""
        if isinstance(inner, Poly):
            inner = RatFunc(inner, reduced=True)
        p, q = inner.num, inner.den
        n = max(len(self.num.coeffs), len(self.den.coeffs)) - 1

        def homog(f: Poly) -> Poly:
            out = Poly((), p.var)
            qpow = [Poly((1,), p.var)]
            for _ in range(n):
                qpow.append(qpow[-1] * q)
            ppow = Poly((1,), p.var)
            for i, c in enumerate(f.coeffs):
                if c:
                    out = out + ppow * qpow[n - i] * c
                ppow = ppow * p
            return out

        return RatFunc(homog(self.num), homog(self.den))

    def valuation(self, place) -> int | float:
        """v_pi for a monic irreducible Poly pi, or the place at infinity (``"inf"``)."""
        if not self.num:
            return math.inf
        if place == "inf" or place is None:
            return (len(self.den.coeffs) - 1) - (len(self.num.coeffs) - 1)
        return valuation(self.num, place) - valuation(self.den, place)

    def map_degree(self) -> int:
        """Degree as a map to P^1: max(deg num, deg den)."""
        return max(len(self.num.coeffs), len(self.den.coeffs)) - 1

    def map_coeffs(self, fn, var: str | None = None) -> "RatFunc":
        return RatFunc(self.num.map_coeffs(fn, var), self.den.map_coeffs(fn, var))

    def derivative(self) -> "RatFunc":
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den**2)


def as_ratfunc(x, var: str = "t") -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x, reduced=True)
    return RatFunc.const(x, var)
