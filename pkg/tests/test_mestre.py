import pytest
import sympy as sp
from gmpy2 import mpq

from ellrank.algebra import Poly, RatFunc
from ellrank.mestre import (
    MestreSeed,
    build_quartic,
    conic_identity,
    conic_parametrize,
    derive_scale,
    find_conic_point,
    mestre_model,
    mestre_quartic,
    mestre_seed,
    nagao_extra_point,
    nagao_model,
    nagao_quartic,
    nagao_seed,
    published_conics,
    s_coefficient,
    search_b6,
    square_split,
)


def test_square_split_identity():
    x = Poly.gen("x")
    p = Poly.from_roots([1, 2, 3, 5, 7, 11, 13, 17], "x")
    q, r = square_split(p)
    assert q * q - r == p
    assert r.degree <= 3
    assert q.lc == 1 and q.degree == 4
    assert x.degree == 1


def test_s_vanishes_on_published_seeds():
    assert s_coefficient(nagao_seed().b) == 0
    assert s_coefficient(mestre_seed().b) == 0


def test_s_nonzero_example():
    # (0..5) is symmetric about 5/2 so s vanishes; moving one entry breaks it
    assert s_coefficient((0, 1, 2, 3, 4, 5)) == 0
    assert s_coefficient((0, 1, 2, 3, 4, 6)) == 560


def test_s_against_sympy():
    t, x = sp.symbols("t x")
    b = (0, 1, 2, 3, 4, 6)
    a = [bi + t for bi in b] + [bi - t for bi in b]
    p = sp.Poly(sp.expand(sp.prod([x - ai for ai in a])), x)
    # the x^5 coefficient of q^2 - p, with q the polynomial part of sqrt(p)
    qc = sp.symbols("q0:6")
    q = x**6 + sum(qc[i] * x**i for i in range(6))
    e = sp.Poly(sp.expand(q**2 - p.as_expr()), x)
    sol = {}
    for k in range(11, 5, -1):
        c = e.coeff_monomial(x**k).subs(sol)
        v = next(s for s in qc if c.has(s))
        sol[v] = sp.solve(c, v)[0]
    r5 = sp.expand(e.coeff_monomial(x**5).subs(sol))
    assert sp.simplify(r5 / t**2) == 560


def test_search_finds_mestre_b6():
    assert 17 in search_b6((-17, -16, 10, 11, 14))


def test_nagao_rebuilt_exactly():
    built, pub = nagao_model(), nagao_quartic()
    assert built.coeffs == pub.coeffs
    r4 = pub.coeffs[4].num
    assert list(r4.coeffs) == [330112972800, 0, 14017536]


def test_nagao_scale_is_inverse_square():
    t = RatFunc.gen("t")
    assert derive_scale(nagao_seed(), nagao_quartic()) == 1 / (t * t)


def test_mestre_rebuilt_with_scale():
    t = RatFunc.gen("t")
    assert mestre_model().coeffs == mestre_quartic().coeffs
    assert derive_scale(mestre_seed(), mestre_quartic()) == mpq(4, 81) / (t * t)
    assert list(mestre_quartic().coeffs[4].num.coeffs) == [213040, 0, 429]


def test_marked_points_on_quartic():
    m = nagao_model()
    assert len(m.points) == 24
    assert all(m.contains(x, y) for x, y in m.points)


def test_extra_point_needs_correction():
    m = nagao_quartic()
    x, y = nagao_extra_point(published=True)
    assert not m.contains(x, y)
    x, y = nagao_extra_point()
    assert m.contains(x, y)
    assert y == nagao_extra_point(published=True)[1] * 1248


def test_published_conics_satisfy_identity():
    pub = published_conics()
    m = pub["mestre"]
    assert conic_identity(m["A"], m["B"], m["t"], m["u"])


def test_own_parametrizations():
    pub = published_conics()
    m = pub["mestre"]
    own = conic_parametrize(m["A"], m["B"], (6, 478))
    assert own.identity_holds() and own.t_of_z == m["t"]
    assert own.u_of_z in (m["u"], -m["u"])
    n = pub["nagao"]
    own = conic_parametrize(n["A"], n["B"], "inf")
    assert own.identity_holds() and own.t_of_z == n["t"]


def test_conic_point_search():
    pt = find_conic_point(213040, 429)
    assert pt is not None
    t0, u0 = pt
    assert u0 * u0 == 213040 + 429 * t0 * t0


def test_conic_errors():
    with pytest.raises(ValueError):
        conic_parametrize(2, 3, (0, 1))
    with pytest.raises(ValueError):
        conic_parametrize(1, 2, "inf")


def test_seed_validation():
    with pytest.raises(ValueError):
        MestreSeed((1, 1, 2, 3, 4, 5))
    with pytest.raises(ValueError):
        build_quartic(MestreSeed((0, 1, 2, 3, 4, 6)))
