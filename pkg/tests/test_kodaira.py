import pytest
from gmpy2 import mpq

from ellrank.algebra import Poly, RatFunc
from ellrank.ellcurve import WeierstrassCurve
from ellrank.kodaira import (
    INFINITY,
    NotMinimalError,
    Place,
    classify,
    fibre_configuration,
    geometric_configuration_mod_p,
    is_rational_surface,
    local_type,
    shioda_tate_rank,
)
from ellrank.models import eq3_curve, t_line_model, z_line_model


@pytest.mark.parametrize(
    "vals, name",
    [
        ((0, 0, 0), "I0"),
        ((0, 0, 3), "I3"),
        ((1, 1, 2), "II"),
        ((1, 2, 3), "III"),
        ((2, 2, 4), "IV"),
        ((2, 3, 6), "I0*"),
        ((2, 3, 8), "I2*"),
        ((3, 4, 8), "IV*"),
        ((3, 5, 9), "III*"),
        ((4, 5, 10), "II*"),
    ],
)
def test_classify_table(vals, name):
    assert classify(*vals).name == name


def test_classify_rejects_non_minimal():
    with pytest.raises(NotMinimalError):
        classify(4, 6, 12)


def test_rational_model_fibres():
    cfg = fibre_configuration(eq3_curve())
    assert [(str(p), f.name) for p, f in cfg.reducible()] == [("inf", "I2")]
    assert cfg.rational_surface
    assert cfg.euler_sum == 12
    assert local_type(eq3_curve(), INFINITY).split


def test_k3_model_fibres():
    cfg = fibre_configuration(t_line_model())
    assert [(str(p), f.name) for p, f in cfg.reducible()] == [("inf", "I4")]
    assert cfg.chi == 2 and cfg.euler_sum == 24
    assert not cfg.rational_surface
    assert cfg.correction() == 3


def test_z_line_fibres():
    # the I4 at t = oo pulls back unramified to z = 0 and z = oo
    cfg = fibre_configuration(z_line_model())
    assert cfg.euler_sum == 12 * cfg.chi
    assert sorted(f.name for _, f in cfg.reducible()) == ["I4", "I4"]


def test_rational_surface_predicate():
    assert is_rational_surface(eq3_curve())
    assert not is_rational_surface(t_line_model())


def test_tate_rank_bookkeeping():
    cfg = fibre_configuration(t_line_model())
    assert shioda_tate_rank(cfg, 18) == 13
    with pytest.raises(ValueError):
        shioda_tate_rank(cfg, 4)


def test_textbook_surface():
    # y^2 = x^3 + t^2: II at t = 0, IV* at infinity (chi = 1)
    t = RatFunc.gen("t")
    E = WeierstrassCurve.short_form(RatFunc.const(0), t * t)
    assert local_type(E, Place(Poly([0, 1], "t"))).name == "IV"
    cfg = fibre_configuration(WeierstrassCurve.short_form(RatFunc.const(mpq(1)), t))
    assert {f.name for _, f in cfg.entries} >= {"II*"}


def test_constant_discriminant_rejected():
    E = WeierstrassCurve.short_form(RatFunc.const(mpq(-1)), RatFunc.const(mpq(0)))
    with pytest.raises(ValueError):
        fibre_configuration(E)


def test_geometric_reduction():
    geo = fibre_configuration(t_line_model()).geometric()
    assert geometric_configuration_mod_p(t_line_model(), 53) == geo
    assert geometric_configuration_mod_p(t_line_model(), 59) != geo
