from ellrank.fileformat import parse_curve_file, read_fixture
from ellrank.heights import gram
from ellrank.kodaira import fibre_configuration
from ellrank.models import (
    eq3_curve,
    q_point,
    t_line_model,
    w_generators,
    w_generators_computed,
    z_generators,
    z_line_model,
    z_substitution,
)


def test_shipped_generators_match_construction():
    assert list(w_generators()) == w_generators_computed()
    assert len(w_generators()) == 13


def test_k3_fixture_matches_construction():
    assert parse_curve_file(read_fixture("k3_minimal.txt")) == t_line_model()


def test_q_point_on_rational_model():
    assert eq3_curve().contains(q_point())


def test_z_substitution_makes_leading_coefficient_square():
    from ellrank.mestre import nagao_model, ratfunc_sqrt

    lead = nagao_model().coeffs[4].compose(z_substitution())
    assert ratfunc_sqrt(lead) is not None


def test_z_rank_13():
    Mz = z_line_model()
    pts = z_generators()
    assert all(Mz.contains(P) for P in pts)
    G = gram(Mz, pts, fibre_configuration(Mz))
    assert G.rank == 13 and G.is_positive_semidefinite()


def test_fixture_inventory():
    for name in ("nagao_quartic.txt", "mestre_quartic.txt", "eq3_minimal.txt", "seeds.txt", "conics.txt", "nagao_points.txt", "q_point.txt"):
        assert read_fixture(name).strip()
