from functools import lru_cache

import pytest
from gmpy2 import mpq

from ellrank.algebra import Poly
from ellrank.heights import galois_conjugate
from ellrank.models import eq3_curve, q_point, t_line_model
from ellrank.qsearch import build_coefficient_system, eliminant, find_extra_point, node_at_infinity, residuals


@lru_cache(maxsize=None)
def solutions():
    return tuple(find_extra_point(eq3_curve()))


def test_node_at_infinity():
    node = node_at_infinity(eq3_curve())
    # x^3 - 432 x + 3456 = (x - 12)^2 (x + 24)
    assert node.x0 == 12 and node.x1 == -24
    assert node.split


def test_system_shape():
    sys_ = build_coefficient_system(eq3_curve())
    assert len(sys_) == 5


def test_eliminant_degree():
    G1, G2, R = eliminant(build_coefficient_system(eq3_curve()))
    assert isinstance(R, Poly) and R.degree == 44


def test_q_found():
    E, Q = eq3_curve(), q_point()
    variants = {Q, galois_conjugate(Q), E.neg(Q), E.neg(galois_conjugate(Q))}
    assert any(s.point() in variants for s in solutions())


def test_solutions_verified():
    E = eq3_curve()
    sols = solutions()
    assert len(sols) == 56
    for s in sols:
        assert E.contains(s.point())
        assert s.X[2] == 12


def test_residuals_vanish():
    E = eq3_curve()
    sys_ = build_coefficient_system(E)
    s = solutions()[0]
    a, b = s.X[1], s.X[0]
    c, d, e = s.Y[2], s.Y[1], s.Y[0]
    assert not any(residuals(sys_, a, b, c, d, e))


def test_rational_solutions_exist():
    assert any(s.D == 1 for s in solutions())
    assert any(s.D == -3 for s in solutions())


def test_requires_i2_at_infinity():
    with pytest.raises(ValueError):
        node_at_infinity(t_line_model())


def test_q_is_quadratic():
    Q = q_point()
    assert Q.x.map_degree() == 2
    assert mpq(12) == Q.x.num.lc
