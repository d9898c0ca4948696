"""Dense polynomials over F_p as ascending lists of Python ints.

These are the workhorses behind modular factorization, field construction
and reduction of curves modulo primes.  All functions return trimmed lists
with entries in ``range(p)``.
"""

from __future__ import annotations

import random


def trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce(f, p: int) -> list:
    return trim([int(c) % p for c in f])


def add(f: list, g: list, p: int) -> list:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(f: list, g: list, p: int) -> list:
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return trim(out)


def scale(f: list, c: int, p: int) -> list:
    c %= p
    return trim([a * c % p for a in f]) if c else []


def mul(f: list, g: list, p: int) -> list:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def divmod_(f: list, g: list, p: int) -> tuple[list, list]:
    if not g:
        raise ZeroDivisionError("division by zero polynomial mod p")
    r = list(f)
    n = len(g)
    if len(r) < n:
        return [], trim(r)
    inv = pow(g[-1], -1, p)
    q = [0] * (len(r) - n + 1)
    for k in range(len(r) - n, -1, -1):
        c = r[k + n - 1] * inv % p
        q[k] = c
        if c:
            for j in range(n):
                r[k + j] = (r[k + j] - c * g[j]) % p
    return trim(q), trim(r[: n - 1])


def mod(f: list, g: list, p: int) -> list:
    return divmod_(f, g, p)[1]


def monic(f: list, p: int) -> list:
    if not f:
        return f
    return scale(f, pow(f[-1], -1, p), p)


def gcd(f: list, g: list, p: int) -> list:
    f, g = trim(list(f)), trim(list(g))
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def xgcd(f: list, g: list, p: int) -> tuple[list, list, list]:
    r0, r1 = trim(list(f)), trim(list(g))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def powmod(f: list, e: int, m: list, p: int) -> list:
    result = [1]
    base = mod(f, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = mod(mul(base, base, p), m, p)
    return result


def derivative(f: list, p: int) -> list:
    return trim([(i * c) % p for i, c in enumerate(f)][1:])


def evaluate(f: list, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def compose_mod(f: list, g: list, m: list, p: int) -> list:
    acc: list = []
    for c in reversed(f):
        acc = add(mod(mul(acc, g, p), m, p), [c % p] if c % p else [], p)
    return acc


def sqrt_mod(a: int, p: int) -> int | None:
    """Tonelli-Shanks square root mod an odd prime, None for non-residues."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


# ------------------------------------------------------------ factorization
def is_squarefree(f: list, p: int) -> bool:
    return len(gcd(f, derivative(f, p), p)) == 1


def squarefree_factorization(f: list, p: int) -> list[tuple[list, int]]:
    """Monic squarefree factors with multiplicities, valid in any characteristic."""
    f = monic(trim(list(f)), p)
    if len(f) <= 1:
        return []
    out: list[tuple[list, int]] = []
    df = derivative(f, p)
    if not df:
        # f is a p-th power: f(x) = g(x^p) = g(x)^p over F_p
        g = [f[i] for i in range(0, len(f), p)]
        return [(h, m * p) for h, m in squarefree_factorization(g, p)]
    c = gcd(f, df, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        g = [c[j] for j in range(0, len(c), p)]
        out += [(h, m * p) for h, m in squarefree_factorization(g, p)]
    return out


def distinct_degree(f: list, p: int) -> list[tuple[list, int]]:
    """DDF of a monic squarefree f: products of all irreducible factors of each degree."""
    out = []
    f = monic(list(f), p)
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = mod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f: list, d: int, p: int, rng: random.Random) -> list[list]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles (odd p)."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = trim(a)
        if len(a) <= 1:
            continue
        g = gcd(a, f, p)
        if 1 < len(g) < len(f):
            break
        if p == 2:
            b = list(a)
            t = list(a)
            for _ in range(d - 1):
                t = mod(mul(t, t, p), f, p)
                b = add(b, t, p)
        else:
            b = sub(powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = gcd(b, f, p)
        if 1 < len(g) < len(f):
            break
    h = divmod_(f, g, p)[0]
    return equal_degree(monic(g, p), d, p, rng) + equal_degree(monic(h, p), d, p, rng)


def factor_squarefree(f: list, p: int, seed: int = 0) -> list[list]:
    rng = random.Random(seed)
    out = []
    for g, d in distinct_degree(f, p):
        out += equal_degree(g, d, p, rng)
    return sorted(out, key=lambda g: (len(g), g))


def factor(f: list, p: int, seed: int = 0) -> list[tuple[list, int]]:
    """Complete factorization into monic irreducibles with multiplicities."""
    out = []
    for g, m in squarefree_factorization(f, p):
        out += [(h, m) for h in factor_squarefree(g, p, seed)]
    return sorted(out, key=lambda gm: (len(gm[0]), gm[0], gm[1]))


def is_irreducible(f: list, p: int) -> bool:
    """Rabin's test."""
    f = monic(trim(list(f)), p)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    primes = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    for q in primes:
        h = sub(powmod(x, p ** (n // q), f, p), x, p)
        if len(gcd(h, f, p)) > 1:
            return False
    return not sub(powmod(x, p**n, f, p), x, p)


def roots(f: list, p: int) -> list[int]:
    f = monic(trim(list(f)), p)
    if len(f) <= 1:
        return []
    h = sub(powmod([0, 1], p, f, p), [0, 1], p)
    g = gcd(f, h, p)
    if len(g) <= 1:
        return []
    return sorted((-h[0]) % p for h in equal_degree(g, 1, p, random.Random(1)))
