import numpy as np
import pytest

from convcodes import field_create
from convcodes import linalg
from convcodes import metrics as m
from convcodes import sysrep as sr
from convcodes.code import array_to_vector, random_noncatastrophic, vector_to_array
from convcodes.poly import Poly


def test_encode_iso_small(F2):
    sys = sr.IsoRep(F2, [[0]], [[1]], [[1]], [[1]])
    traj = sr.encode_iso(sys, [[1]])
    assert traj.codeword.tolist() == [[1, 1], [1, 0]]
    assert traj.terminated
    assert traj.states.tolist() == [[0], [1], [0]]


def test_encode_iso_horizon_cap(F2):
    # A = 1 never clears: the trajectory is cut at the horizon
    sys = sr.IsoRep(F2, [[1]], [[1]], [[1]], [[0]])
    traj = sr.encode_iso(sys, [[1]], horizon=5)
    assert not traj.terminated and len(traj.codeword) == 5


def test_kalman_unreachable_state(F2):
    sys = sr.IsoRep(F2, np.eye(2, dtype=int), [[1, 0]], [[1], [1]], [[1]])
    ro = sr.reachability_observability(sys)
    assert not ro.reachable and ro.reach_rank == 1
    _, _, delta = sr.kalman_form(sys)
    assert delta == 1
    assert sr.minimal_iso(sys).s == 1


def test_pbh_matches_rank_tests():
    rng = np.random.default_rng(7)
    F = field_create(3)
    for _ in range(50):
        s, k, r = rng.integers(1, 4), rng.integers(1, 3), rng.integers(1, 3)
        A = rng.integers(0, 3, (s, s))
        # sparse entries make unreachable systems common
        B = rng.integers(0, 3, (k, s)) * (rng.random((k, s)) < 0.5)
        C = rng.integers(0, 3, (s, r)) * (rng.random((s, r)) < 0.5)
        D = rng.integers(0, 3, (k, r))
        sys = sr.IsoRep(F, A, B, C, D)
        ro = sr.reachability_observability(sys)
        assert sr.pbh(sys) == (ro.reachable, ro.observable)


def test_iso_round_trip(ex1):
    sys = sr.iso_from_code(ex1)
    assert sys.s == ex1.degree
    assert sr.reachability_observability(sys).reachable
    back = sr.code_from_iso(sys, original_order=True)
    assert back == ex1


def _codeword_inputs(code, msg):
    arr = vector_to_array(code.encode(array_to_vector(code.field, msg)))
    sys = sr.iso_from_code(code)
    iso = sr.to_iso_coords(sys, arr)
    return sys, iso, iso[:, code.n - code.k:]


def test_iso_encoding_matches_generator(mdp7):
    rng = np.random.default_rng(3)
    for _ in range(10):
        msg = rng.integers(1, 7, (5, 1))
        sys, iso, u = _codeword_inputs(mdp7, msg)
        traj = sr.encode_iso(sys, u)
        assert traj.terminated
        assert (traj.codeword[:len(iso)] == iso).all()
        assert not traj.codeword[len(iso):].any()


def test_minimal_iso_after_padding(ex1):
    sys = sr.iso_from_code(ex1)
    F = sys.field
    s = sys.s
    A = np.zeros((s + 1, s + 1), dtype=int)
    A[:s, :s] = sys.A
    A[s, s] = 1
    B = np.zeros((sys.k, s + 1), dtype=int)
    B[:, :s] = sys.B
    C = np.zeros((s + 1, sys.n - sys.k), dtype=int)
    C[:s] = sys.C
    C[s] = 1
    big = sr.IsoRep(F, A, B, C, sys.D, sys.coords)
    assert sr.minimal_iso(big).s == s
    assert sr.code_from_iso(big, original_order=True) == ex1


def test_mds_from_system():
    F = field_create(5)
    c = sr.mds_from_system(2, 1, F)
    assert c.params == (2, 1, 1)
    assert m.is_mds(c)
    assert m.free_distance(c) == 4
    with pytest.raises(ValueError):
        sr.mds_from_system(4, 2, F)


def test_fl_criterion_agrees_with_distances():
    rng = np.random.default_rng(11)
    F = field_create(5)
    for params in [(2, 1, 1), (2, 1, 2), (3, 2, 1)]:
        for _ in range(4):
            c = random_noncatastrophic(F, *params, rng)
            verdict = sr.mdp_criterion_FL(sr.iso_from_code(c))
            assert bool(verdict) == bool(m.is_mdp(c))


def test_fl_criterion_ex1_false(ex1):
    assert not sr.mdp_criterion_FL(sr.iso_from_code(ex1))


def test_fl_mask_block_triangular(mdp7):
    sys = sr.iso_from_code(mdp7)
    M, mask = sr.FL_matrix(sys, 2)
    assert M.shape == (3, 3)
    assert mask.tolist() == [[True, True, True], [False, True, True], [False, False, True]]


def test_E_matrix_annihilates_trajectories(mdp7):
    sys, _, u = _codeword_inputs(mdp7, [[1], [5], [2]])
    F = sys.field
    E = sys.E_matrix()
    traj = sr.encode_iso(sys, u)
    assert traj.terminated
    T = len(traj.codeword)
    x = [Poly(F, traj.states[:T, j]) for j in range(sys.s)]
    y = [Poly(F, traj.codeword[:, j]) for j in range(sys.n - sys.k)]
    u = [Poly(F, traj.codeword[:, sys.n - sys.k + j]) for j in range(sys.k)]
    row = x + u + y
    for col in range(E.cols):
        acc = Poly.zero(F)
        for i, p in enumerate(row):
            acc = acc + p * E[i, col]
        assert acc.is_zero()


def test_similarity_preserves_code(mdp7):
    sys = sr.iso_from_code(mdp7)
    S = np.array([[1, 2], [0, 3]])
    assert linalg.rank(sys.field, S) == 2
    assert sr.code_from_iso(sys.similar(S)) == sr.code_from_iso(sys)
