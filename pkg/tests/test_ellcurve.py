import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from ellrank.algebra import RatFunc
from ellrank.ellcurve import (
    CurvePoint,
    NotOnCurveError,
    WeierstrassCurve,
    base_change_and_specialize,
    chi_of,
    descend_even,
    jacobian,
    minimal_model,
    pullback_square,
    quartic_to_weierstrass,
    short_isomorphism,
    to_short,
)
from ellrank.fileformat import format_curve_file, parse_curve_file, read_fixture
from ellrank.mestre import nagao_model, nagao_quartic, nagao_zero_point
from ellrank.models import eq3_curve, t_line_map, t_line_model, w_generators

# y^2 = x^3 - 2 over Q with P = (3, 5) of infinite order
E0 = WeierstrassCurve.short_form(mpq(0), mpq(-2))
P0 = CurvePoint(mpq(3), mpq(5))


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_group_law_axioms(a, b, c):
    A, B, C = (E0.mul(k, P0) for k in (a, b, c))
    assert E0.add(E0.add(A, B), C) == E0.add(A, E0.add(B, C))
    assert E0.add(A, B) == E0.add(B, A)
    assert E0.add(A, E0.neg(A)).is_zero
    assert E0.mul(a + b, P0) == E0.add(A, B)


def test_add_against_sympy_chord():
    x, y = sp.symbols("x y")
    Q = E0.double(P0)
    lam = sp.Rational(3 * 9, 2 * 5)
    xr = lam**2 - 6
    assert Q.x == mpq(int(xr.p), int(xr.q))
    assert E0.contains(Q)
    assert (x, y) != (None, None)


def test_point_validation():
    with pytest.raises(NotOnCurveError):
        E0.point(mpq(1), mpq(1))


def test_group_law_over_function_field():
    M = t_line_model()
    W = w_generators()
    P, Q, R = W[0], W[1], W[2]
    assert M.add(M.add(P, Q), R) == M.add(P, M.add(Q, R))
    assert M.sub(M.add(P, Q), Q) == P


def test_specialization_commutes_with_addition():
    M = t_line_model()
    P, Q = w_generators()[0], w_generators()[3]
    S = M.add(P, Q)
    t0 = mpq(2)
    Ms = base_change_and_specialize(M, t0)
    sp_ = lambda R: CurvePoint(R.x(t0), R.y(t0))  # noqa: E731
    assert Ms.add(sp_(P), sp_(Q)) == sp_(S)


def test_to_short_and_isomorphism():
    E = WeierstrassCurve(mpq(1), mpq(-1), mpq(1), mpq(-3), mpq(0))
    S, iso = to_short(E)
    assert S.short
    P = CurvePoint(mpq(0), mpq(0))
    assert E.contains(P)
    assert S.contains(iso.point_image(P))
    assert iso.point_preimage(iso.point_image(P)) == P
    assert E.j_invariant == S.j_invariant
    S2 = WeierstrassCurve.short_form(S.a4 * 16, S.a6 * 64)
    assert short_isomorphism(S, S2) is not None


def test_jacobian_minimal_model_is_rational_model():
    E, _ = quartic_to_weierstrass(nagao_quartic(), nagao_zero_point())
    M, iso = minimal_model(E)
    assert descend_even(M) == eq3_curve()
    J, _ = minimal_model(descend_even(jacobian(nagao_quartic())))
    assert J == eq3_curve()


def test_pullback_is_t_line_model():
    assert pullback_square(eq3_curve(), "t") == t_line_model()


def test_chi():
    assert chi_of(eq3_curve()) == 1
    assert chi_of(t_line_model()) == 2


def test_model_map_round_trip():
    mm = t_line_map()
    m = nagao_model()
    for pt in m.points[:4]:
        P = mm.forward(pt)
        assert t_line_model().contains(P)
        assert mm.backward(P) == pt


def test_marked_zero_goes_to_identity():
    mm = t_line_map()
    assert mm.forward(nagao_zero_point()).is_zero


def test_jacobian_j_invariant_matches_sympy():
    # the invariant route and the marked-point route give the same j
    E, _ = quartic_to_weierstrass(nagao_quartic(), nagao_zero_point())
    J = jacobian(nagao_quartic())
    assert E.j_invariant == J.j_invariant


def test_curve_file_round_trip():
    text = read_fixture("eq3_minimal.txt")
    E = parse_curve_file(text)
    again = parse_curve_file(format_curve_file(E))
    assert again == E
    assert format_curve_file(again) == format_curve_file(E)


def test_curve_file_normalizes_fractions():
    E = parse_curve_file("var = t\na4 = [2/4]\na6 = [1]\n")
    assert "1/2" in format_curve_file(E)


def test_empty_curve_file():
    with pytest.raises(ValueError):
        parse_curve_file("# nothing\n")


def test_discriminant_nonzero():
    assert eq3_curve().discriminant != 0
    t = RatFunc.gen("t")
    assert t_line_model().discriminant != 0 * t
