"""Factorization of rational polynomials (Zassenhaus: mod-p factoring + Hensel lifting).

Degrees met in this package stay small (a few dozen), so plain subset
recombination is used; no lattice reduction.
"""

from __future__ import annotations

import itertools
import math

import gmpy2
from gmpy2 import mpq, mpz

from . import modp
from .poly import Poly, content, int_kron_mul, squarefree_decomposition
from .scalars import rat

_PRIMES = [p for p in range(3, 2000) if gmpy2.is_prime(p)]


# ------------------------------------------------------ integer poly helpers
def _imul(f: list, g: list) -> list:
    if not f or not g:
        return []
    if min(len(f), len(g)) >= 12:
        return [int(c) for c in int_kron_mul([mpz(c) for c in f], [mpz(c) for c in g])]
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _imod(f: list, m: int) -> list:
    return modp.trim([c % m for c in f])


def _isub(f: list, g: list) -> list:
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] -= c
    return modp.trim(out)


def _iadd(f: list, g: list) -> list:
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] += c
    return modp.trim(out)


def _divmod_monic(f: list, h: list, m: int) -> tuple[list, list]:
    """Division by a monic polynomial with coefficients reduced mod m."""
    r = [c % m for c in f]
    n = len(h)
    if len(r) < n:
        return [], modp.trim(r)
    q = [0] * (len(r) - n + 1)
    for k in range(len(r) - n, -1, -1):
        c = r[k + n - 1] % m
        q[k] = c
        if c:
            for j in range(n):
                r[k + j] = (r[k + j] - c * h[j]) % m
    return modp.trim(q), modp.trim(r[: n - 1])


def _symmetric(f: list, m: int) -> list:
    half = m // 2
    return modp.trim([c - m if c > half else c for c in (x % m for x in f)])


def _exact_int_div(f: list, g: list) -> list | None:
    """f / g over Z when exact, else None."""
    if len(g) > len(f):
        return None
    r = list(f)
    n = len(g)
    lc = g[-1]
    q = [0] * (len(r) - n + 1)
    for k in range(len(r) - n, -1, -1):
        top = r[k + n - 1]
        if top % lc:
            return None
        c = top // lc
        q[k] = c
        if c:
            for j in range(n):
                r[k + j] -= c * g[j]
    if any(r):
        return None
    return q


# ------------------------------------------------------------ Hensel lifting
def _lift_pair(f, g, h, s, t, m):
    """One quadratic Hensel step from m to m^2 (h monic, lc(g) = lc(f))."""
    m2 = m * m
    e = _imod(_isub(f, _imul(g, h)), m2)
    q, r = _divmod_monic(_imul(s, e), h, m2)
    g2 = _imod(_iadd(_iadd(g, _imul(t, e)), _imul(q, g)), m2)
    h2 = _imod(_iadd(h, r), m2)
    b = _imod(_isub(_iadd(_imul(s, g2), _imul(t, h2)), [1]), m2)
    c, d = _divmod_monic(_imul(s, b), h2, m2)
    s2 = _imod(_isub(s, d), m2)
    t2 = _imod(_isub(_isub(t, _imul(t, b)), _imul(c, g2)), m2)
    return g2, h2, s2, t2, m2


def hensel_lift(f: list, factors: list[list], p: int, target: int) -> tuple[list[list], int]:
    """Lift f = lc * prod(factors) mod p to a modulus p^(2^j) >= target.

    ``factors`` are monic mod p; returns monic lifted factors and the modulus.
    """
    lc = f[-1]
    if len(factors) == 1:
        m = p
        while m < target:
            m *= m
        inv = pow(lc, -1, m)
        return [_imod([c * inv for c in f], m)], m
    k = len(factors) // 2
    left, right = factors[:k], factors[k:]
    g = [1]
    for a in left:
        g = modp.mul(g, a, p)
    h = [1]
    for a in right:
        h = modp.mul(h, a, p)
    g = modp.scale(g, lc, p)
    _, s, t = modp.xgcd(g, h, p)
    m = p
    while m < target:
        g, h, s, t, m = _lift_pair(f, g, h, s, t, m)
    gl, m1 = hensel_lift(_symmetric(g, m), left, p, target)
    hl, m2 = hensel_lift(_symmetric(h, m), right, p, target)
    mm = min(m, m1, m2)
    return [_imod(x, mm) for x in gl + hl], mm


# ------------------------------------------------------------- Zassenhaus
def _choose_prime(f: list, tries: int = 6) -> tuple[int, list[list]]:
    best = None
    found = 0
    for p in _PRIMES:
        if f[-1] % p == 0:
            continue
        fp = modp.reduce(f, p)
        if not modp.is_squarefree(fp, p):
            continue
        facs = modp.factor_squarefree(fp, p)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        found += 1
        if len(facs) == 1 or found >= tries:
            break
    if best is None:
        raise ArithmeticError("no suitable prime for modular factorization")
    return best


def _coeff_bound(f: list) -> int:
    n = len(f) - 1
    norm2 = math.isqrt(sum(c * c for c in f)) + 1
    return 2 * abs(f[-1]) * (2**n) * norm2 + 1


def _primitive(f: list) -> list:
    g = 0
    for c in f:
        g = math.gcd(g, c)
    out = [c // g for c in f] if g > 1 else list(f)
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def _zassenhaus(f: list, max_degree: int | None = None) -> tuple[list[list], list]:
    """Factors of a squarefree primitive f; returns (factors, unresolved cofactor).

    With ``max_degree`` only factors up to that degree are extracted and the
    cofactor collects everything else (possibly reducible).
    """
    n = len(f) - 1
    if n <= 1:
        return [f], []
    p, facs = _choose_prime(f)
    if len(facs) == 1:
        return ([f], []) if max_degree is None or n <= max_degree else ([], f)
    lifted, m = hensel_lift(f, facs, p, _coeff_bound(f))
    out: list[list] = []
    remaining = list(range(len(lifted)))
    g = list(f)
    s = 1
    while 2 * s <= len(remaining):
        if max_degree is not None and all(
            sum(len(lifted[i]) - 1 for i in combo) > max_degree
            for combo in itertools.combinations(remaining, s)
        ):
            break
        hit = False
        for combo in itertools.combinations(remaining, s):
            deg = sum(len(lifted[i]) - 1 for i in combo)
            if max_degree is not None and deg > max_degree:
                continue
            lc = g[-1]
            cand = [lc % m]
            for i in combo:
                cand = _imod(_imul(cand, lifted[i]), m)
            cand = _primitive(_symmetric(cand, m))
            q = _exact_int_div(g, cand)
            if q is None:
                continue
            out.append(cand)
            g = _primitive(q)
            remaining = [i for i in remaining if i not in combo]
            hit = True
            break
        if not hit:
            s += 1
    if len(g) > 1:
        if max_degree is None or len(g) - 1 <= max_degree:
            out.append(g)
            g = []
    else:
        g = []
    return out, g


def _int_to_poly(f: list, var: str) -> Poly:
    return Poly([mpq(c) for c in f], var)


def factor_rationals(f: Poly) -> tuple[object, list[tuple[Poly, int]]]:
    """Complete factorization over Q: ``f = unit * prod g^e`` with monic irreducible g.

    Returns ``(unit, [(g, e), ...])`` sorted by (degree, coefficients).
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    unit = f.lc
    out: list[tuple[Poly, int]] = []
    for part, e in squarefree_decomposition(f):
        ints = [int(rat(c) / content(part)) for c in part.coeffs]
        facs, rest = _zassenhaus(_primitive(ints))
        assert not rest
        for g in facs:
            out.append((_int_to_poly(g, f.var).monic(), e))
    out.sort(key=lambda ge: (len(ge[0].coeffs), [rat(c) for c in ge[0].coeffs]))
    return unit, out


def low_degree_factors(f: Poly, max_degree: int) -> tuple[list[tuple[Poly, int]], Poly]:
    """Monic irreducible factors of degree <= max_degree, plus the unresolved cofactor."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    found: list[tuple[Poly, int]] = []
    rest = Poly([1], f.var)
    for part, e in squarefree_decomposition(f):
        ints = [int(rat(c) / content(part)) for c in part.coeffs]
        facs, left = _zassenhaus(_primitive(ints), max_degree)
        for g in facs:
            found.append((_int_to_poly(g, f.var).monic(), e))
        if left:
            rest = rest * _int_to_poly(left, f.var).monic() ** e
    found.sort(key=lambda ge: (len(ge[0].coeffs), [rat(c) for c in ge[0].coeffs]))
    return found, rest


def rational_roots(f: Poly) -> list:
    """Distinct rational roots, ascending."""
    facs, _ = low_degree_factors(f, 1)
    return sorted(-g.coeffs[0] for g, _ in facs)


def is_irreducible_certificate(f: Poly) -> str | None:
    """A cheap proof of irreducibility over Q, or None when none was found.

    Degree <= 3: no rational root.  Otherwise: a prime p (not dividing the
    leading coefficient) with f mod p irreducible, or incompatible degree
    patterns across primes.
    """
    n = len(f.coeffs) - 1
    if n <= 0:
        return None
    if n == 1:
        return "linear"
    ints = _primitive([int(rat(c) / content(f)) for c in f.coeffs])
    if n <= 3:
        return None if rational_roots(f) else "no rational root"
    possible = None
    for p in _PRIMES[:60]:
        if ints[-1] % p == 0:
            continue
        fp = modp.reduce(ints, p)
        if not modp.is_squarefree(fp, p):
            continue
        degs = [len(g) - 1 for g in modp.factor_squarefree(fp, p)]
        if len(degs) == 1:
            return f"irreducible mod {p}"
        sums = {sum(c) for r in range(len(degs) + 1) for c in itertools.combinations(degs, r)}
        possible = sums if possible is None else possible & sums
        if possible <= {0, n}:
            return "degree patterns"
    return None
