import sympy as sp
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from ellrank.algebra import (
    Poly,
    QuadExt,
    RatFunc,
    discriminant,
    factor_rationals,
    format_poly,
    parse_poly,
    parse_scalar,
    poly_gcd,
    poly_xgcd,
    rat,
    rat_sqrt,
    resultant,
    sqrt_quadext,
    squarefree_decomposition,
    squarefree_part,
    valuation,
)
from ellrank.algebra.intfactor import factor_int
from ellrank.algebra.syntax import SyntaxParseError

X = sp.Symbol("x")

small = st.integers(-20, 20)
coeff_lists = st.lists(small, min_size=1, max_size=6)


def P(cs):
    return Poly([mpq(c) for c in cs], "x")


def to_sympy(f: Poly):
    return sp.Poly([sp.Rational(int(c.numerator), int(c.denominator)) for c in reversed(f.coeffs)] or [0], X)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_axioms(a, b, c):
    f, g, h = P(a), P(b), P(c)
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f - f == P([0])


@given(coeff_lists, coeff_lists)
def test_divmod_identity(a, b):
    f, g = P(a), P(b)
    if not g:
        return
    q, r = f.divmod(g)
    assert q * g + r == f
    assert not r or r.degree < g.degree


@given(coeff_lists, coeff_lists)
def test_gcd_matches_sympy(a, b):
    f, g = P(a), P(b)
    if not f and not g:
        return
    ours = poly_gcd(f, g)
    ref = sp.gcd(to_sympy(f), to_sympy(g))
    ref = ref.monic() if ref.degree() >= 0 and not ref.is_zero else ref
    assert to_sympy(ours).all_coeffs() == ref.all_coeffs()


@given(coeff_lists, coeff_lists)
def test_xgcd_bezout(a, b):
    f, g = P(a), P(b)
    if not f or not g:
        return
    d, s, t = poly_xgcd(f, g)
    assert s * f + t * g == d


@given(st.lists(small, min_size=2, max_size=5), st.lists(small, min_size=2, max_size=5))
def test_resultant_matches_sympy(a, b):
    f, g = P(a), P(b)
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == sp.resultant(to_sympy(f), to_sympy(g))


def test_discriminant_of_cubic():
    f = P([1, 1, 0, 1])  # x^3 + x + 1
    assert discriminant(f) == -31


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.integers(1, 3))
def test_factor_round_trip(roots, k):
    f = Poly.from_roots([mpq(r) for r in roots], "x") ** k * P([1, 0, 1])
    c, facs = factor_rationals(f)
    prod = Poly([c], "x")
    for g, m in facs:
        prod = prod * g**m
    assert prod == f
    assert sorted((g.degree, m) for g, m in facs if g.degree == 2) == [(2, 1)]


def test_factor_against_sympy():
    f = to_poly = P([-6, 11, -6, 1]) * P([2, 0, 3]) * P([1, 1]) ** 2
    _, facs = factor_rationals(to_poly)
    ref = sp.factor_list(to_sympy(f))[1]
    assert sorted((g.degree, m) for g, m in facs) == sorted((g.degree(), m) for g, m in ref)


@given(coeff_lists, st.integers(1, 3))
def test_squarefree_decomposition(a, k):
    f = P(a)
    if f.degree < 1:
        return
    g = f * P([1, 1]) ** k
    prod = P([g.lc])
    for h, m in squarefree_decomposition(g):
        prod = prod * h**m
    assert prod == g
    s = squarefree_part(g)
    assert poly_gcd(s, s.derivative()).degree == 0


def test_valuation():
    pi = P([-2, 1])
    f = pi**3 * P([1, 0, 1])
    assert valuation(f, pi) == 3


def test_quadext_field_ops():
    a = QuadExt(1, 2, -3)
    b = QuadExt(mpq(1, 2), -1, -3)
    assert a * a.inverse() == 1
    assert (a * b).norm() == a.norm() * b.norm()
    assert (a + b).conj() == a.conj() + b.conj()
    s = sqrt_quadext(a * a)
    assert s in (a, -a)


def test_quadext_sqrt_of_rational():
    assert sqrt_quadext(QuadExt(-3, 0, -3)) == QuadExt(0, 1, -3)


def test_rat_sqrt():
    assert rat_sqrt(mpq(9, 4)) == mpq(3, 2)
    assert rat_sqrt(mpq(2)) is None
    assert rat_sqrt(mpq(-1)) is None


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=4), st.lists(st.integers(-30, 30), min_size=1, max_size=4))
def test_ratfunc_arith(a, b):
    f = RatFunc(Poly([mpq(c) for c in a], "t"), Poly([1, 1], "t"))
    g = RatFunc(Poly([mpq(c) for c in b], "t"), Poly([2, 0, 1], "t"))
    assert (f + g) - g == f
    if g:
        assert (f * g) / g == f


def test_ratfunc_compose_and_valuation():
    t = RatFunc.gen("t")
    f = (t * t + 1) / (t - 3)
    assert f.compose(t + 3) == ((t + 3) * (t + 3) + 1) / t
    assert f.valuation("inf") == -1
    assert f.map_degree() == 2


def test_syntax_round_trip():
    f = parse_poly("[1/2,-3,0,5]", ("t",))
    assert format_poly(f) == "[1/2,-3,0,5]"
    assert parse_scalar("2/4") == mpq(1, 2)
    assert parse_scalar("1+2*sqrt(-3)") == QuadExt(1, 2, -3)


def test_syntax_errors_have_positions():
    try:
        parse_poly("[1,2", ("t",))
    except SyntaxParseError as exc:
        assert "position" in str(exc) or ":" in str(exc)
    else:
        raise AssertionError("expected a parse error")


@given(st.integers(2, 10**12))
def test_factor_int(n):
    f = factor_int(n)
    prod = 1
    for p, k in f.items():
        assert sp.isprime(p)
        prod *= p**k
    assert prod == n


def test_rat_normalizes():
    assert rat(2, 4) == mpq(1, 2)
