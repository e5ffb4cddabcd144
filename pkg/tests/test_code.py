import numpy as np
import pytest
from hypothesis import given, strategies as st

from convcodes import field_create
from convcodes import polyalg as pa
from convcodes.code import ConvolutionalCode, as_poly_vector, random_noncatastrophic
from convcodes.poly import Poly, PolyMatrix

from conftest import EX1_H


def vec(F, entries):
    return as_poly_vector(F, entries)


def test_example_parameters(ex1, ex1_tilde):
    assert ex1.params == (3, 2, 3) and ex1.noncatastrophic
    assert ex1.L == 4 and ex1.M == 4
    assert ex1_tilde.params == (3, 2, 4) and not ex1_tilde.noncatastrophic
    assert ex1_tilde.H is None


def test_parity_check(ex1, F2):
    H = PolyMatrix.from_entries(F2, EX1_H)
    assert ex1.H == H
    assert ex1.G_min @ H.T == PolyMatrix.zeros(F2, 2, 1)
    assert ConvolutionalCode.from_parity_check(H) == ex1


def test_small_codes(F2):
    block = ConvolutionalCode(PolyMatrix.from_entries(F2, [[[1], [1], [1]]]))
    assert block.params == (3, 1, 0)
    rep = ConvolutionalCode.from_parity_check(PolyMatrix.from_entries(F2, [[[1], [1]]]))
    assert rep == ConvolutionalCode(PolyMatrix.from_entries(F2, [[[1], [1]]]))
    c = ConvolutionalCode.from_parity_check(PolyMatrix.from_entries(F2, [[[0, 1], [1]]]))
    assert c == ConvolutionalCode(PolyMatrix.from_entries(F2, [[[1], [0, 1]]]))
    with pytest.raises(ValueError):
        ConvolutionalCode(PolyMatrix.from_entries(F2, [[[1], [1]], [[1], [1]]]))
    with pytest.raises(ValueError):
        ConvolutionalCode(PolyMatrix.identity(F2, 2))


def test_encode(ex1, F2):
    assert ex1.encode([[1], []]) == vec(F2, [[1], [1], [0, 1]])
    assert all(p.is_zero() for p in ex1.encode([[], []]))
    assert ex1.encode([[], [1]]) == vec(F2, [[0, 0, 1], [1], [1, 1]])


def test_contains(ex1, F2):
    v = ex1.contains(vec(F2, [[1], [1], [0, 1]]))
    assert v and v.witness == vec(F2, [[1], []])
    assert not ex1.contains(vec(F2, [[1], [], []]))
    assert ex1.contains(vec(F2, [[], [], []]))


def test_catastrophic_membership_gap(ex1, ex1_tilde, F2):
    # (1,1,z) satisfies H c = 0 but is not in the row module of G~
    c = vec(F2, [[1], [1], [0, 1]])
    assert all(s.is_zero() for s in ex1.syndrome(c))
    assert not ex1_tilde.contains(c)
    assert ex1_tilde.contains(ex1_tilde.encode([[1, 1], [0, 1]]))


def test_dual(ex1, F2):
    d = ex1.dual()
    assert d.params == (3, 1, 3)
    assert d == ConvolutionalCode(PolyMatrix.from_entries(F2, EX1_H))
    assert d.dual() == ex1
    rep = ConvolutionalCode(PolyMatrix.from_entries(F2, [[[1], [1]]]))
    assert rep.dual() == rep  # [1 1] is self-dual over F_2
    with pytest.raises(ValueError):
        ConvolutionalCode(PolyMatrix.from_entries(F2, [[[1, 1, 1], [0, 1], [1, 0, 1]],
                                                       [[0, 0, 1], [1], [1, 1]]])).dual()


def test_reverse(ex1, F2):
    r = ex1.reverse()
    want = PolyMatrix.from_entries(F2, [[[0, 1], [0, 1], [1]], [[1], [0, 0, 1], [0, 1, 1]]])
    assert r.G == want
    c1 = ConvolutionalCode(PolyMatrix.from_entries(F2, [[[1], [1, 1]]]))
    assert c1.reverse().G == PolyMatrix.from_entries(F2, [[[0, 1], [1, 1]]])
    const = ConvolutionalCode(PolyMatrix.from_entries(F2, [[[1], [0], [1]]]))
    assert const.reverse().G == const.G
    rng = np.random.default_rng(7)
    for _ in range(10):
        u = [Poly(F2, rng.integers(0, 2, 4)) for _ in range(2)]
        c = ex1.encode(u)
        d = max(p.degree for p in c)
        if d < 0:
            continue
        assert r.contains([p.reversed(d) for p in c])


def test_complementary_minors(ex1, F2):
    assert ex1.complementary_minors_check()
    rep = ConvolutionalCode(PolyMatrix.from_entries(F2, [[[1], [1]]]))
    assert rep.complementary_minors_check()


params = st.sampled_from([(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 2, 1), (3, 2, 2), (4, 2, 2)])
fields = st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)])


@given(params, fields, st.integers(0, 10**6))
def test_random_code_invariants(nkd, pN, seed):
    n, k, d = nkd
    F = field_create(*pN)
    rng = np.random.default_rng(seed)
    C = random_noncatastrophic(F, n, k, d, rng)
    assert C.degree == d == pa.internal_degree(C.G_min)
    assert pa.is_left_prime(C.H) and C.H.rows == n - k
    assert C.G_min @ C.H.T == PolyMatrix.zeros(F, k, n - k)
    assert C.complementary_minors_check()
    D = C.dual()
    assert D.degree == C.degree and D.dual() == C
    assert ConvolutionalCode.from_parity_check(C.H) == C
    u = [Poly(F, rng.integers(0, F.q, 3)) for _ in range(k)]
    v = C.contains(C.encode(u))
    assert v and v.witness == [x for x in u]


@given(st.integers(0, 10**6))
def test_code_identity_ignores_generator_choice(seed):
    F = field_create(3)
    rng = np.random.default_rng(seed)
    C = random_noncatastrophic(F, 3, 2, 2, rng)
    U = PolyMatrix.from_entries(F, [[[1], rng.integers(0, 3, 3).tolist()], [[0], [2]]])
    assert ConvolutionalCode(U @ C.G) == C
    assert hash(ConvolutionalCode(U @ C.G)) == hash(C)
