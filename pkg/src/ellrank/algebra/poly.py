"""Univariate polynomials over an arbitrary exact coefficient domain.

Coefficients are stored ascending and the zero polynomial is the empty tuple.
Coefficients may themselves be polynomials in another variable; this is how
bivariate problems (the elimination in ``qsearch``) are handled.
"""

from __future__ import annotations

import math

import gmpy2
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq, mpz

from .scalars import Int, QuadExt, Rat, is_rational, rat

_KRON_THRESHOLD = 24


def _is_zero(c) -> bool:
    return not c


def _is_ratfunc_in(x, var: str) -> bool:
    """True for a RatFunc whose variable is ``var`` (it must handle the operation)."""
    return hasattr(x, "den") and isinstance(getattr(x, "num", None), Poly) and x.num.var == var


class Poly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        c = list(coeffs)
        while c and _is_zero(c[-1]):
            c.pop()
        self.coeffs = tuple(c)
        self.var = var

    # ------------------------------------------------------------------ basics
    @classmethod
    def gen(cls, var: str = "x", one=1) -> "Poly":
        return cls((0 * one, one), var)

    @classmethod
    def const(cls, c, var: str = "x") -> "Poly":
        return cls((c,), var)

    @classmethod
    def from_roots(cls, roots: Sequence, var: str = "x") -> "Poly":
        out = cls((1,), var)
        for r in roots:
            out = out * cls((-r, 1), var)
        return out

    @property
    def degree(self):
        """Degree; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def _inner_vars(self) -> tuple:
        for c in self.coeffs:
            if isinstance(c, Poly):
                return (c.var,) + c._inner_vars()
        return ()

    def _lift(self, other):
        """Return ``other`` as a Poly in ``self.var``, or None if ``other`` is outer."""
        if _is_ratfunc_in(other, self.var):
            return None
        if isinstance(other, Poly):
            if other.var == self.var:
                return other
            if self.var in other._inner_vars():
                return None
        return Poly((other,), self.var)

    def _new(self, coeffs) -> "Poly":
        return Poly(coeffs, self.var)

    # ------------------------------------------------------------- arithmetic
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._new(out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return self._new(-c for c in self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_ratfunc_in(other, self.var):
            return NotImplemented
        if isinstance(other, Poly):
            if other.var != self.var:
                if self.var in other._inner_vars():
                    return NotImplemented
                return self._new(c * other for c in self.coeffs)
        else:
            return self._new(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new(())
        if min(len(a), len(b)) >= _KRON_THRESHOLD and _all_rational(a) and _all_rational(b):
            return self._new(_rational_kron_mul(a, b))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return self._new(out)

    def __rmul__(self, other):
        return self._new(other * c for c in self.coeffs)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self._new((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division; exact coefficient division when the ring is not a field."""
        o = self._lift(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        lc = o.coeffs[-1]
        n = len(o.coeffs)
        r = list(self.coeffs)
        if len(r) < n:
            return self._new(()), self
        field = not isinstance(lc, Poly)
        inv = _inverse(lc) if field else None
        q = [0] * (len(r) - n + 1)
        ocs = o.coeffs
        for k in range(len(r) - n, -1, -1):
            top = r[k + n - 1]
            if _is_zero(top):
                continue
            c = top * inv if field else top / lc
            q[k] = c
            for j in range(n - 1):
                r[k + j] = r[k + j] - c * ocs[j]
            r[k + n - 1] = 0 * top
        return self._new(q), self._new(r[: n - 1])

    def __floordiv__(self, other):
        if isinstance(other, Poly) and other.var == self.var:
            return self.divmod(other)[0]
        return self / other

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __truediv__(self, other):
        """Scalar division, or exact division by a polynomial (remainder must vanish)."""
        if _is_ratfunc_in(other, self.var):
            return NotImplemented
        if isinstance(other, Poly) and (other.var == self.var):
            q, r = self.divmod(other)
            if r:
                raise ArithmeticError("polynomial division is not exact")
            return q
        if isinstance(other, Poly) and self.var in other._inner_vars():
            return NotImplemented
        if isinstance(other, Poly):
            return self._new(c / other for c in self.coeffs)
        inv = _inverse(other)
        return self._new(c * inv for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly) and other.var == self.var:
            return self.coeffs == other.coeffs
        if isinstance(other, Poly) and self.var in other._inner_vars():
            return other.__eq__(self)
        if _is_zero(other):
            return not self.coeffs
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0]) if self.coeffs else 0
        return hash((self.var, self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        from .syntax import format_poly

        return format_poly(self)

    # ------------------------------------------------------------- utilities
    def __call__(self, value):
        """Horner evaluation at any value supporting + and *."""
        if not self.coeffs:
            return 0 * value if not isinstance(value, Poly) else value._new(())
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        if len(self.coeffs) == 1 and isinstance(value, Poly):
            return value._new((acc,))
        return acc

    def derivative(self) -> "Poly":
        return self._new(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self / self.coeffs[-1]

    def map_coeffs(self, fn: Callable, var: str | None = None) -> "Poly":
        return Poly((fn(c) for c in self.coeffs), var or self.var)

    def with_var(self, var: str) -> "Poly":
        return Poly(self.coeffs, var)

    def shift(self, k: int) -> "Poly":
        """Multiply by ``var**k``."""
        if not self.coeffs:
            return self
        return self._new([0 * self.coeffs[0]] * k + list(self.coeffs))

    def reverse(self, n: int | None = None) -> "Poly":
        """``var**n * self(1/var)``, default ``n = deg``."""
        n = len(self.coeffs) - 1 if n is None else n
        c = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return self._new(reversed(c[: n + 1]))

    def valuation_at_zero(self):
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return i
        return math.inf

    def compose(self, inner: "Poly") -> "Poly":
        return self(inner)

    def is_even(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs[1::2])

    def even_part_in(self, var: str) -> "Poly":
        """For an even polynomial f(t) return g(u) with f(t) = g(t^2)."""
        if not self.is_even():
            raise ValueError("polynomial is not even")
        return Poly(self.coeffs[0::2], var)

    def subs_square(self) -> "Poly":
        """g(u) -> g(t^2) keeping the variable name."""
        out = []
        for c in self.coeffs:
            out += [c, 0]
        return self._new(out)


def _inverse(c):
    if isinstance(c, (int, Int)):
        return mpq(1, c)
    return 1 / c


def _all_rational(cs) -> bool:
    return all(isinstance(c, (Rat, Int, int)) for c in cs)


# ------------------------------------------------------ Kronecker substitution
def _to_int_vector(cs) -> tuple[list, int]:
    den = 1
    for c in cs:
        if isinstance(c, Rat):
            d = c.denominator
            if d != 1:
                den = den * d // math.gcd(den, d)
    den = mpz(den)
    return [mpz(c * den) if isinstance(c, Rat) else mpz(c) * den for c in cs], den


def int_kron_mul(a: Sequence, b: Sequence) -> list:
    """Product of two integer coefficient lists through one big-integer multiply."""
    ba = max((abs(int(x)).bit_length() for x in a), default=0)
    bb = max((abs(int(x)).bit_length() for x in b), default=0)
    bits = ba + bb + max(len(a), len(b)).bit_length() + 2
    shift = mpz(1) << bits

    def pack(v):
        acc = mpz(0)
        for c in reversed(v):
            acc = (acc << bits) + c
        return acc

    prod = pack(a) * pack(b)
    out = []
    n = len(a) + len(b) - 1
    half = shift >> 1
    for _ in range(n):
        digit = prod & (shift - 1)
        prod >>= bits
        if digit >= half:
            digit -= shift
            prod += 1
        out.append(digit)
    return out


def _rational_kron_mul(a, b) -> list:
    ia, da = _to_int_vector(a)
    ib, db = _to_int_vector(b)
    prod = int_kron_mul(ia, ib)
    den = da * db
    if den == 1:
        return [mpq(c) for c in prod]
    return [mpq(c, den) for c in prod]


# ------------------------------------------------------------ gcd machinery
def _coeff_is_field(f: Poly) -> bool:
    return not any(isinstance(c, Poly) for c in f.coeffs)


_GCD_PRIME = (1 << 61) - 1


def _modp_image(f: Poly, p: int, sqrt_d: dict) -> list | None:
    """Image of a Q or Q(sqrt D) polynomial in F_p, None if a denominator dies."""
    out = []
    for c in f.coeffs:
        if isinstance(c, QuadExt):
            if c.D not in sqrt_d:
                return None
            r = sqrt_d[c.D]
            a, b = c.a, c.b
            if a.denominator % p == 0 or b.denominator % p == 0:
                return None
            v = (int(a.numerator) * pow(int(a.denominator), -1, p) + r * int(b.numerator) * pow(int(b.denominator), -1, p)) % p
        elif is_rational(c):
            c = rat(c)
            if c.denominator % p == 0:
                return None
            v = int(c.numerator) * pow(int(c.denominator), -1, p) % p
        else:
            return None
        out.append(v)
    return out


def _coprime_by_reduction(f: Poly, g: Poly) -> bool:
    """True when a modular image proves gcd(f, g) = 1 over Q or Q(sqrt D)."""
    from . import modp

    ds = {c.D for c in f.coeffs + g.coeffs if isinstance(c, QuadExt)}
    if len(ds) > 1:
        return False
    sqrt_d = {}
    for D in ds:
        r = modp.sqrt_mod(D % _GCD_PRIME, _GCD_PRIME)
        if r is None:
            return False
        sqrt_d[D] = r
    fi = _modp_image(f, _GCD_PRIME, sqrt_d)
    gi = _modp_image(g, _GCD_PRIME, sqrt_d)
    if fi is None or gi is None:
        return False
    fi = modp.trim(fi)
    gi = modp.trim(gi)
    if len(fi) != len(f.coeffs) or len(gi) != len(g.coeffs):
        return False
    return len(modp.gcd(fi, gi, _GCD_PRIME)) == 1


def _modular_gcd(fc, gc) -> list:
    """Primitive integer gcd of two rational coefficient lists.

    One prime above the Landau-Mignotte bound, checked by exact division;
    an unlucky prime just moves on to the next one.
    """
    from . import modp
    from .factor import _exact_int_div, _primitive, _symmetric

    A = _primitive([int(c) for c in _to_int_vector(fc)[0]])
    B = _primitive([int(c) for c in _to_int_vector(gc)[0]])
    if len(A) < len(B):
        A, B = B, A
    gamma = math.gcd(A[-1], B[-1])
    norm = min(math.isqrt(sum(c * c for c in v)) + 1 for v in (A, B))
    bound = 2 * gamma * (1 << len(B)) * norm + 1
    p = int(gmpy2.next_prime(bound))
    while True:
        if A[-1] % p and B[-1] % p:
            h = modp.gcd([c % p for c in A], [c % p for c in B], p)
            if len(h) == 1:
                return [1]
            h = _primitive(_symmetric([gamma * c for c in h], p))
            if _exact_int_div(A, h) is not None and _exact_int_div(B, h) is not None:
                return h
        p = int(gmpy2.next_prime(p))


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over a coefficient field; gcd(0, 0) = 0."""
    if not f:
        return g.monic() if g else g
    if not g:
        return f.monic()
    if len(f.coeffs) == 1 or len(g.coeffs) == 1:
        return f._new((1,))
    if _coprime_by_reduction(f, g):
        return f._new((1,))
    if _all_rational(f.coeffs) and _all_rational(g.coeffs):
        return f._new([mpq(c) for c in _modular_gcd(f.coeffs, g.coeffs)]).monic()
    a, b = f.monic(), g.monic()
    if len(a.coeffs) < len(b.coeffs):
        a, b = b, a
    while b:
        if len(b.coeffs) == 1:
            return f._new((1,))
        r = a % b
        a, b = b, (r.monic() if r else r)
    return a.monic()


def poly_xgcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """(d, s, t) with s f + t g = d = monic gcd."""
    r0, r1 = f, g
    s0, s1 = f._new((1,)), f._new(())
    t0, t1 = f._new(()), f._new((1,))
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    lc = r0.lc
    return r0 / lc, s0 / lc, t0 / lc


def resultant(f: Poly, g: Poly):
    """Resultant with Sylvester-determinant semantics: lc(f)^deg g * prod g(roots of f)."""
    if not f and not g:
        raise ValueError("resultant of two zero polynomials")
    if not f or not g:
        return 0
    if _coeff_is_field(f) and _coeff_is_field(g):
        return _resultant_euclid(f, g)
    return _resultant_bareiss(f, g)


def _resultant_euclid(f: Poly, g: Poly):
    sign = 1
    scale = 1
    a, b = f, g
    while True:
        m, n = len(a.coeffs) - 1, len(b.coeffs) - 1
        if n == 0:
            return sign * scale * b.coeffs[0] ** m
        if m == 0:
            return sign * scale * a.coeffs[0] ** n
        r = a % b
        if not r:
            return 0 * scale
        # res(a, b) = (-1)^{mn} res(b, a) = (-1)^{mn} lc(b)^{m - deg r} res(b, r)
        if (m * n) % 2:
            sign = -sign
        scale = scale * b.lc ** (m - (len(r.coeffs) - 1))
        a, b = b, r


def sylvester_matrix(f: Poly, g: Poly) -> list[list]:
    m, n = len(f.coeffs) - 1, len(g.coeffs) - 1
    size = m + n
    zero = 0 * f.lc
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - i - len(fc)))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - i - len(gc)))
    return rows


def bareiss_det(mat: list[list]):
    """Fraction-free determinant over an integral domain with exact division."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0 * a[0][0]
        akk = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * akk - a[i][k] * a[k][j]
                a[i][j] = num / prev if not (isinstance(prev, int) and prev == 1) else num
            a[i][k] = 0 * akk
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def _resultant_bareiss(f: Poly, g: Poly):
    m, n = len(f.coeffs) - 1, len(g.coeffs) - 1
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    return bareiss_det(sylvester_matrix(f, g))


def discriminant(f: Poly):
    n = len(f.coeffs) - 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / f.lc


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: f = lc(f) * prod g_k^k, g_k monic squarefree and coprime.

    Valid in characteristic 0 and in characteristic p when deg f < p.
    """
    if not f:
        raise ValueError("squarefree decomposition of the zero polynomial")
    if len(f.coeffs) == 1:
        return []
    out = []
    fm = f.monic()
    d = fm.derivative()
    a = poly_gcd(fm, d)
    b = fm / a
    c = d / a
    dd = c - b.derivative()
    k = 1
    while len(b.coeffs) > 1:
        g = poly_gcd(b, dd)
        if len(g.coeffs) > 1:
            out.append((g, k))
        b = b / g
        c = dd / g
        dd = c - b.derivative()
        k += 1
    return out


def squarefree_part(f: Poly) -> Poly:
    out = f._new((1,))
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out


def valuation(f: Poly, pi: Poly) -> int | float:
    """Largest k with pi^k | f (inf for f = 0)."""
    if not f:
        return math.inf
    k = 0
    while True:
        q, r = f.divmod(pi)
        if r:
            return k
        f = q
        k += 1


def coprime_base(items: Iterable, gcd: Callable, is_unit: Callable, div: Callable) -> list:
    """Factor refinement: pairwise coprime non-units from which every item is built.

    Each item is a product of powers of the returned elements (times a unit).
    """
    base: list = []

    def insert(a):
        while not is_unit(a):
            for i, b in enumerate(base):
                g = gcd(a, b)
                if is_unit(g):
                    continue
                base.pop(i)
                a = div(a, g)
                insert(g)
                insert(div(b, g))
                break
            else:
                base.append(a)
                return

    for item in items:
        insert(item)
    return base


def poly_coprime_base(polys: Iterable[Poly]) -> list[Poly]:
    """Pairwise coprime monic squarefree polynomials with uniform valuations on every input."""
    parts = []
    for f in polys:
        if f and len(f.coeffs) > 1:
            parts += [g for g, _ in squarefree_decomposition(f)]
    return coprime_base(
        parts,
        gcd=poly_gcd,
        is_unit=lambda a: len(a.coeffs) <= 1,
        div=lambda a, b: (a / b).monic(),
    )


def content(f: Poly) -> Rat:
    """Positive rational content of a Q-polynomial (f / content is primitive in Z[x])."""
    if not f:
        return mpq(0)
    num = 0
    den = 1
    for c in f.coeffs:
        c = rat(c)
        num = math.gcd(num, int(c.numerator))
        den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
    return mpq(num, den)


def primitive_int_coeffs(f: Poly) -> list[int]:
    """Integer coefficients of f / content(f), sign chosen to make lc > 0."""
    c = content(f)
    out = [int(rat(x) / c) for x in f.coeffs]
    if out and out[-1] < 0:
        out = [-x for x in out]
    return out
