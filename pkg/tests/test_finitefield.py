import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from ellrank.algebra import FqField
from ellrank.algebra import modp

FIELDS = [(5, 1), (7, 2), (3, 3), (13, 1), (53, 2)]


@pytest.fixture(scope="module", params=FIELDS, ids=lambda pk: f"F{pk[0]}^{pk[1]}")
def field(request):
    return FqField(*request.param)


def test_field_axioms(field):
    rng = np.random.default_rng(0)
    a, b, c = (int(v) for v in rng.integers(0, field.q, 3))
    assert field.add(a, field.neg(a)) == 0
    assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
    if a:
        assert field.mul(a, field.inv(a)) == field.from_int(1)
    assert field.pow(a, field.q) == a


def test_character_counts_half(field):
    chars = [field.char(a) for a in range(1, field.q)]
    assert chars.count(1) == chars.count(-1) == (field.q - 1) // 2


def test_vector_ops_match_scalar(field):
    a = np.arange(field.q, dtype=np.int64)
    b = (a * 7 + 3) % field.q
    prod = field.vec_mul(a, b)
    slow = field.vec_mul_slow(a, b)
    assert np.array_equal(prod, slow)
    assert all(int(prod[i]) == field.mul(int(a[i]), int(b[i])) for i in range(0, field.q, max(1, field.q // 50)))
    s = field.vec_add(a, b)
    assert np.array_equal(s, field.vec_add_zech(a, b))


def test_frobenius_fixes_prime_field(field):
    a = np.arange(field.p, dtype=np.int64)
    assert np.array_equal(field.vec_frobenius(a), a)


def test_sqrt(field):
    for a in range(field.q):
        r = field.sqrt(a)
        if field.char(a) == -1:
            assert r is None
        else:
            assert field.mul(r, r) == a


@given(st.sampled_from([5, 7, 11, 13]), st.lists(st.integers(0, 12), min_size=2, max_size=8))
def test_modp_factor_round_trip(p, cs):
    f = modp.trim([c % p for c in cs])
    if len(f) < 2:
        return
    lc = f[-1]
    prod = [lc]
    for g, k in modp.factor(f, p):
        assert modp.is_irreducible(g, p)
        for _ in range(k):
            prod = modp.mul(prod, g, p)
    assert prod == f


def test_modp_factor_matches_sympy():
    x = sp.Symbol("x")
    f = [1, 0, 2, 1, 0, 1, 1]  # ascending
    ours = sorted(len(g) - 1 for g, _ in modp.factor(f, 7))
    ref = sp.factor_list(sp.Poly(list(reversed(f)), x, modulus=7))[1]
    assert ours == sorted(g.degree() for g, m in ref for _ in range(1))


def test_rejects_non_prime():
    with pytest.raises(ValueError):
        FqField(9)
