"""Exact scalars: rationals (gmpy2 ``mpq``) and quadratic extensions Q(sqrt D)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpq, mpz

Rat = type(mpq(0))
Int = type(mpz(0))


def rat(value, den=None) -> Rat:
    """Coerce ints, Fractions, strings like ``"-3/4"`` or mpq into an mpq."""
    if den is not None:
        return mpq(int(value), int(den))
    if isinstance(value, Rat):
        return value
    if isinstance(value, (int, Int)):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        s = value.strip()
        if "/" in s:
            n, d = s.split("/")
            return mpq(int(n), int(d))
        return mpq(int(s))
    if isinstance(value, Rational):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {value!r} to a rational")


def is_rational(x) -> bool:
    return isinstance(x, (Rat, Int, int, Fraction))


def rat_sqrt(x) -> Rat | None:
    """Square root of a rational, or None if ``x`` is not a rational square."""
    x = rat(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, en = gmpy2.iroot(n, 2)
    rd, ed = gmpy2.iroot(d, 2)
    if en and ed:
        return mpq(rn, rd)
    return None


def squarefree_part(n: int) -> int:
    """Squarefree kernel of a nonzero integer, sign kept (small inputs only)."""
    from .intfactor import factor_int

    if n == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factor_int(abs(int(n))).items():
        if e % 2:
            out *= p
    return sign * out


class MixedFieldError(TypeError):
    """Arithmetic between Q(sqrt D1) and Q(sqrt D2) with D1 != D2."""


class QuadExt:
    """The element ``a + b*sqrt(D)`` of Q(sqrt D), D a squarefree integer != 1.

    Rationals (int / mpq) mix freely; two QuadExt values must share D.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D: int):
        D = int(D)
        if D in (0, 1):
            raise ValueError("D must be a squarefree integer different from 0 and 1")
        self.a = rat(a)
        self.b = rat(b)
        self.D = D

    @classmethod
    def sqrt_of(cls, D: int) -> "QuadExt":
        return cls(0, 1, D)

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.D != self.D:
                raise MixedFieldError(f"sqrt({self.D}) and sqrt({other.D}) do not mix")
            return other
        if is_rational(other):
            return QuadExt(other, 0, self.D)
        return None

    def conj(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.D)

    def norm(self) -> Rat:
        return self.a * self.a - self.D * self.b * self.b

    def trace(self) -> Rat:
        return 2 * self.a

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if is_rational(other):
            return QuadExt(self.a * other, self.b * other, self.D)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt D)")
        return QuadExt(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        if is_rational(other):
            if other == 0:
                raise ZeroDivisionError
            return QuadExt(self.a / other, self.b / other, self.D)
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
        result = QuadExt(1, 0, self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.D == other.D and self.a == other.a and self.b == other.b
        if is_rational(other):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.D})"

    def __str__(self):
        from .syntax import format_scalar

        return format_scalar(self)


def sqrt_quadext(x) -> QuadExt | Rat | None:
    """Square root of ``x`` inside its own field Q(sqrt D), or None.

    Rational input returns a rational root when one exists.  For
    ``x = a + b sqrt D`` with ``b != 0`` a root ``u + v sqrt D`` must satisfy
    ``u^2 - D v^2 = +-sqrt(N(x))``, so the norm has to be a rational square.
    """
    if is_rational(x):
        return rat_sqrt(x)
    if x.b == 0:
        r = rat_sqrt(x.a)
        if r is not None:
            return QuadExt(r, 0, x.D)
        r = rat_sqrt(x.a / x.D)
        if r is not None:
            return QuadExt(0, r, x.D)
        return None
    n = rat_sqrt(x.norm())
    if n is None:
        return None
    for s in (n, -n):
        u = rat_sqrt((x.a + s) / 2)
        if u is None or u == 0:
            continue
        v = x.b / (2 * u)
        cand = QuadExt(u, v, x.D)
        if cand * cand == x:
            return cand
    return None


def conj(x):
    """Galois conjugate; identity on rationals."""
    if isinstance(x, QuadExt):
        return x.conj()
    return x
