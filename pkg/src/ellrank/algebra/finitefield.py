"""Finite fields F_q, q = p^k, with optional log/exp, Zech and squareness tables.

Elements are encoded as integers ``c0 + c1*p + ... + c_{k-1}*p^(k-1)`` where
``c0 + c1*x + ...`` is the reduced representative modulo the field modulus.
The modulus is the smallest primitive polynomial, so ``x`` generates the
multiplicative group and its log tables are the discrete logarithms base x.
For k = 1 the modulus is ``x - g`` with g the smallest primitive root.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import modp
from .intfactor import factor_int

TABLE_LIMIT = 1 << 24


class FqField:
    __slots__ = ("p", "k", "q", "modulus", "gen_code", "_order_primes", "log", "exp", "zech", "sq", "_pows")

    def __init__(self, p: int, k: int = 1, modulus: list | None = None, tables: bool | None = None):
        if p < 2 or factor_int(p) != {p: 1}:
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p, self.k, self.q = p, k, p**k
        self._order_primes = list(factor_int(self.q - 1)) if self.q > 2 else []
        self._pows = [p**i for i in range(k)]
        if modulus is None:
            modulus = self._find_primitive_modulus()
        else:
            modulus = modp.reduce(modulus, p)
            if len(modulus) != k + 1 or modulus[-1] != 1 or not modp.is_irreducible(modulus, p):
                raise ValueError("modulus must be monic irreducible of degree k")
        self.modulus = modulus
        self.gen_code = (-modulus[0]) % p if k == 1 else p
        if not self._is_generator(self.gen_code):
            self.gen_code = next(c for c in range(1, self.q) if self._is_generator(c))
        self.log = self.exp = self.zech = self.sq = None
        if tables is None:
            tables = self.q <= TABLE_LIMIT
        if tables:
            if self.q > TABLE_LIMIT:
                raise ValueError("tables are only built for q <= 2^24")
            self._build_tables()

    # ------------------------------------------------------------- setup
    def _find_primitive_modulus(self) -> list:
        p, k = self.p, self.k
        if k == 1:
            g = next(g for g in range(1, p) if p == 2 or all(pow(g, (p - 1) // r, p) != 1 for r in self._order_primes))
            return [(-g) % p, 1]
        for tail in itertools.product(range(p), repeat=k):
            f = list(reversed(tail)) + [1]
            if f[0] == 0 or not modp.is_irreducible(f, p):
                continue
            if all(modp.powmod([0, 1], (self.q - 1) // r, f, p) != [1] for r in self._order_primes):
                return f
        raise ArithmeticError("no primitive polynomial found")

    def _is_generator(self, code: int) -> bool:
        if code == 0:
            return False
        return all(self._pow_slow(code, (self.q - 1) // r) != 1 for r in self._order_primes)

    def _build_tables(self) -> None:
        q, n = self.q, self.q - 1
        block = max(1, int(np.ceil(np.sqrt(n))))
        head = np.empty(block, dtype=np.int64)
        c = 1
        for i in range(block):
            head[i] = c
            c = self._mul_slow(c, self.gen_code)
        step = c  # g^block
        exp = np.empty(n, dtype=np.int64)
        cur = 1
        for j in range(0, n, block):
            m = min(block, n - j)
            exp[j : j + m] = self.vec_mul_slow(head[:m], cur)
            cur = self._mul_slow(cur, step)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if (log[1:] < 0).any():
            raise ArithmeticError("generator check failed while building tables")
        self.exp = np.concatenate([exp, exp])
        self.log = log
        one_plus = self.vec_add(exp, np.ones(n, dtype=np.int64))
        self.zech = log[one_plus]
        sq = np.full(q, -1, dtype=np.int8)
        sq[0] = 0
        if self.p == 2:
            sq[1:] = 1
        else:
            sq[exp[0::2]] = 1
        self.sq = sq

    # ---------------------------------------------------------- encoding
    def digits(self, code: int) -> list:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def _from_digits(self, ds) -> int:
        return sum(int(d) % self.p * w for d, w in zip(ds, self._pows))

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def element(self, value) -> "FqElement":
        if isinstance(value, FqElement):
            return value
        if isinstance(value, (list, tuple)):
            return FqElement(self, self._from_digits(value))
        return FqElement(self, self.from_int(value))

    def __call__(self, value) -> "FqElement":
        return self.element(value)

    def gen(self) -> "FqElement":
        return FqElement(self, self.gen_code)

    def elements(self):
        return (FqElement(self, c) for c in range(self.q))

    # ------------------------------------------------ scalar code arithmetic
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod = modp.mul(self.digits(a), self.digits(b), self.p)
        return self._from_digits(modp.mod(prod, self.modulus, self.p))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self.log is not None:
            return int(self.exp[self.log[a] + self.log[b]])
        return self._mul_slow(a, b)

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            e >>= 1
            if e:
                base = self._mul_slow(base, base)
        return result

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        e %= self.q - 1
        if self.log is not None:
            return int(self.exp[self.log[a] * e % (self.q - 1)])
        return self._pow_slow(a, e)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.q - 2)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def char(self, a: int) -> int:
        if self.p == 2:
            raise ValueError("quadratic character needs odd characteristic")
        if a == 0:
            return 0
        if self.sq is not None:
            return int(self.sq[a])
        return 1 if self._pow_slow(a, (self.q - 1) // 2) == 1 else -1

    def sqrt(self, a: int) -> int | None:
        """A square root of ``a`` (the one with even log, halved), or None."""
        if a == 0:
            return 0
        if self.char(a) != 1:
            return None
        if self.log is not None:
            return int(self.exp[self.log[a] // 2])
        if self.k == 1:
            return modp.sqrt_mod(a, self.p)
        for c in range(1, self.q):
            if self._mul_slow(c, c) == a:
                return c
        return None

    # -------------------------------------------------- vectorized kernels
    def vec_digits(self, a: np.ndarray) -> list[np.ndarray]:
        out = []
        for _ in range(self.k):
            a, r = np.divmod(a, self.p)
            out.append(r)
        return out

    def vec_from_digits(self, ds) -> np.ndarray:
        acc = np.zeros_like(ds[0])
        for d, w in zip(ds, self._pows):
            acc = acc + (d % self.p) * w
        return acc

    def vec_add(self, a: np.ndarray, b) -> np.ndarray:
        if self.k == 1:
            return (a + b) % self.p
        if np.isscalar(b) or getattr(b, "ndim", 1) == 0:
            bd = self.digits(int(b))
        else:
            bd = self.vec_digits(b)
        return self.vec_from_digits([x + y for x, y in zip(self.vec_digits(a), bd)])

    def vec_mul(self, a: np.ndarray, b) -> np.ndarray:
        """Product of code arrays (b may be a scalar code); uses log tables."""
        if self.log is None:
            return self.vec_mul_slow(a, b)
        la = self.log[a]
        lb = self.log[b] if not np.isscalar(b) else self.log[int(b)]
        out = self.exp[np.where(la < 0, 0, la) + np.where(lb < 0, 0, lb)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def vec_mul_slow(self, a: np.ndarray, b) -> np.ndarray:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        ad = self.vec_digits(np.asarray(a, dtype=np.int64))
        bd = self.digits(int(b)) if np.isscalar(b) else self.vec_digits(np.asarray(b, dtype=np.int64))
        conv = [np.zeros_like(ad[0]) for _ in range(2 * k - 1)]
        for i in range(k):
            for j in range(k):
                conv[i + j] = (conv[i + j] + ad[i] * bd[j]) % p
        m = self.modulus
        for top in range(2 * k - 2, k - 1, -1):
            c = conv[top]
            for j in range(k):
                conv[top - k + j] = (conv[top - k + j] - c * m[j]) % p
        return self.vec_from_digits(conv[:k])

    def vec_add_zech(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Addition through Zech logarithms: g^i + g^j = g^(i + Z(j - i))."""
        la, lb = self.log[a], self.log[b]
        n = self.q - 1
        diff = (lb - la) % n
        z = self.zech[diff]
        res = self.exp[(la + np.where(z < 0, 0, z)) % n]
        res = np.where(z < 0, 0, res)
        res = np.where(la < 0, b, res)
        return np.where(lb < 0, a, res)

    def vec_char(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            raise ValueError("quadratic character needs odd characteristic")
        return self.sq[a]

    def vec_frobenius(self, a: np.ndarray) -> np.ndarray:
        la = self.log[a]
        return np.where(la < 0, 0, self.exp[(la * self.p) % (self.q - 1)])

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, tuple(self.modulus)))

    def __repr__(self):
        return f"FqField({self.p}, {self.k})"


class FqElement:
    """Field element wrapper so Poly/RatFunc/curves can work over F_q."""

    __slots__ = ("field", "code")

    def __init__(self, field: FqField, code: int):
        self.field = field
        self.code = int(code)

    def _c(self, other) -> int | None:
        if isinstance(other, FqElement):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("elements of different fields")
            return other.code
        if isinstance(other, int) or type(other).__name__ == "mpz":
            return self.field.from_int(other)
        if type(other).__name__ == "mpq":
            return self.field.mul(self.field.from_int(other.numerator), self.field.inv(self.field.from_int(other.denominator)))
        return None

    def _wrap(self, code: int) -> "FqElement":
        return FqElement(self.field, code)

    def __add__(self, other):
        c = self._c(other)
        return NotImplemented if c is None else self._wrap(self.field.add(self.code, c))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._c(other)
        return NotImplemented if c is None else self._wrap(self.field.sub(self.code, c))

    def __rsub__(self, other):
        c = self._c(other)
        return NotImplemented if c is None else self._wrap(self.field.sub(c, self.code))

    def __mul__(self, other):
        c = self._c(other)
        return NotImplemented if c is None else self._wrap(self.field.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._c(other)
        return NotImplemented if c is None else self._wrap(self.field.mul(self.code, self.field.inv(c)))

    def __rtruediv__(self, other):
        c = self._c(other)
        return NotImplemented if c is None else self._wrap(self.field.mul(c, self.field.inv(self.code)))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.code, e))

    def inverse(self) -> "FqElement":
        return self._wrap(self.field.inv(self.code))

    def __eq__(self, other):
        c = self._c(other)
        return c is not None and c == self.code

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        return f"F{self.field.q}({self.code})"

    __str__ = __repr__

    def char(self) -> int:
        return self.field.char(self.code)

    def sqrt(self) -> "FqElement | None":
        r = self.field.sqrt(self.code)
        return None if r is None else self._wrap(r)


def fq_char(field: FqField, x) -> int:
    """Quadratic character of x in F_q: 0, +1 (nonzero square) or -1."""
    if field.p == 2:
        raise ValueError("quadratic character is undefined in characteristic 2")
    code = x.code if isinstance(x, FqElement) else field.from_int(x)
    return field.char(code)
