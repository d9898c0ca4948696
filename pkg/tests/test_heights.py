import os
from functools import lru_cache

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from ellrank.heights import (
    GramMatrix,
    canonical_height_limit,
    denominator_bound,
    error_bound,
    exact_rank,
    galois_conjugate,
    gram,
    height_pairing,
    intersection_with_zero,
    norm_map,
    shioda_height,
    sigma_t,
    theorem1_certificate,
)
from ellrank.kodaira import fibre_configuration
from ellrank.models import eq3_curve, q_point, t_line_model, w_generators


@lru_cache(maxsize=None)
def rational():
    E = eq3_curve()
    return E, fibre_configuration(E)


@lru_cache(maxsize=None)
def k3():
    M = t_line_model()
    return M, fibre_configuration(M)


@lru_cache(maxsize=None)
def norms():
    E, _ = rational()
    return tuple(norm_map(E, P) for P in w_generators()[:12])


def test_height_of_q_both_methods():
    E, cfg = rational()
    Q = q_point()
    assert shioda_height(E, Q, cfg) == mpq(3, 2)
    assert canonical_height_limit(E, Q, cfg) == mpq(3, 2)


def test_q_meets_zero_nowhere():
    E, cfg = rational()
    assert intersection_with_zero(E, q_point(), cfg.chi) == 0


def test_doubling_degree():
    E, cfg = rational()
    Q2 = E.double(q_point())
    assert Q2.x.map_degree() == 6
    assert shioda_height(E, Q2, cfg) == 6


def test_bounds_for_limit_method():
    _, cfg = rational()
    assert denominator_bound(cfg) == 4
    assert error_bound(cfg) == mpq(5, 2)


@settings(max_examples=8)
@given(st.integers(0, 11), st.integers(0, 11))
def test_parallelogram_law(i, j):
    M, cfg = k3()
    P, Q = w_generators()[i], w_generators()[j]
    h = lambda R: shioda_height(M, R, cfg)  # noqa: E731
    assert h(M.add(P, Q)) + h(M.sub(P, Q)) == 2 * h(P) + 2 * h(Q)


@settings(max_examples=6)
@given(st.integers(0, 12), st.integers(-3, 3))
def test_quadratic(i, n):
    M, cfg = k3()
    P = w_generators()[i]
    assert shioda_height(M, M.mul(n, P), cfg) == n * n * shioda_height(M, P, cfg)


@pytest.mark.parametrize("i", [0, 7])
def test_two_methods_agree_on_norms(i):
    E, cfg = rational()
    P = norms()[i]
    assert shioda_height(E, P, cfg) == canonical_height_limit(E, P, cfg)


def test_two_methods_agree_on_a_sum():
    E, cfg = rational()
    P = E.add(q_point(), norms()[1])
    assert shioda_height(E, P, cfg) == canonical_height_limit(E, P, cfg)


@pytest.mark.slow
@pytest.mark.skipif(os.environ.get("ELLRANK_SLOW") != "1", reason="set ELLRANK_SLOW=1 (about 2 minutes)")
def test_two_methods_agree_on_k3():
    M, cfg = k3()
    P = w_generators()[0]
    assert shioda_height(M, P, cfg) == canonical_height_limit(M, P, cfg) == 4


def test_pairing_symmetric_bilinear():
    M, cfg = k3()
    P, Q, R = w_generators()[:3]
    pair = lambda A, B: height_pairing(M, A, B, cfg)  # noqa: E731
    assert pair(P, Q) == pair(Q, P)
    assert pair(M.add(P, Q), R) == pair(P, R) + pair(Q, R)


def test_w_gram_rank_12():
    M, cfg = k3()
    G = gram(M, w_generators(), cfg)
    assert G.size == 13
    assert G.is_symmetric() and G.is_positive_semidefinite()
    assert G.rank == 12
    ref = sp.Matrix([[sp.Rational(int(c.numerator), int(c.denominator)) for c in row] for row in G.entries])
    assert ref.rank() == 12


def test_norm_images():
    E, cfg = rational()
    N = list(norms())
    assert gram(E, N, cfg).rank == 6
    assert gram(E, N + [q_point()], cfg).rank == 7


def test_norm_is_sigma_invariant():
    P = w_generators()[0]
    assert sigma_t(sigma_t(P)) == P


def test_theorem1_certificate():
    E, cfg = rational()
    rep = theorem1_certificate(E, q_point(), list(norms()), 13, cfg)
    assert rep.ok
    assert rep.sigma_moves_q and rep.height_difference > 0
    assert rep.conclusion == "rank >= 14 over Q(sqrt(-3), z)"


def test_theorem1_refuses_fixed_point():
    E, cfg = rational()
    P = norms()[0]
    rep = theorem1_certificate(E, P, None, None, cfg)
    assert not rep.ok and rep.failed.startswith("(i)")
    assert galois_conjugate(P) == P


def test_exact_rank_against_sympy():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert exact_rank([[mpq(c) for c in r] for r in rows]) == sp.Matrix(rows).rank()


def test_gram_psd_detects_negative():
    assert not GramMatrix([[mpq(1), mpq(2)], [mpq(2), mpq(1)]]).is_positive_semidefinite()
