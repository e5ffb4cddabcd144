import itertools

import numpy as np
import pytest

from convcodes import field_create
from convcodes import decoders as dec
from convcodes.channels import ERASED, erase_channel
from convcodes.code import ConvolutionalCode
from convcodes.poly import Poly, PolyMatrix

import oracles

MDP7_BIDIR_PATTERN = [(0, 0), (0, 1), (1, 1), (2, 0), (2, 1), (3, 1), (8, 1), (9, 1),
                      (10, 0), (11, 0), (12, 1), (13, 0), (13, 1)]


def _stream(code, coeffs):
    F = code.field
    return dec.codeword_array(code, [Poly(F, coeffs)])


# -- block


def test_block_repetition():
    F = field_create(2)
    H = [[1, 1, 0], [1, 0, 1]]
    assert dec.erasure_decode_block(H, [1, ERASED, ERASED], F).tolist() == [1, 1, 1]


def test_block_single_parity():
    F = field_create(2)
    assert dec.erasure_decode_block([[1, 1, 1]], [1, ERASED, 0], F).tolist() == [1, 1, 0]


def test_block_too_many_erasures():
    F = field_create(2)
    with pytest.raises(dec.DecodingFailure) as exc:
        dec.erasure_decode_block([[1, 1, 1]], [ERASED, ERASED, 0], F)
    assert exc.value.rank == 1 and exc.value.unknowns == 2


def test_block_from_degree_zero_code():
    F = field_create(5)
    G = PolyMatrix.from_entries(F, [[[1], [1], [1]]])
    code = ConvolutionalCode(G)
    assert dec.erasure_decode_block(code, [ERASED, 3, ERASED]).tolist() == [3, 3, 3]


# -- forward


def test_forward_no_erasures(mdp7):
    s = _stream(mdp7, [1, 2, 3, 4])
    rep = dec.erasure_decode_forward(mdp7, s)
    assert rep.status == "complete" and (rep.recovered == s).all() and rep.erasures == 0


def test_forward_recovers_burst_inside_budget(mdp7):
    s = _stream(mdp7, [1, 2, 3, 4, 5, 6, 1, 2])
    w = erase_channel(s, burst=(3, 2))
    rep = dec.erasure_decode_forward(mdp7, w)
    assert rep.status == "complete"
    assert (rep.recovered == s).all()
    assert any(tr.solved for tr in rep.trace)


def test_forward_never_overwrites_received(mdp7):
    rng = np.random.default_rng(4)
    for _ in range(20):
        s = _stream(mdp7, rng.integers(1, 7, 10))
        w = erase_channel(s, rate=0.4, seed=int(rng.integers(1 << 30)))
        rep = dec.erasure_decode_forward(mdp7, w)
        known = w.values != ERASED
        assert (rep.recovered[known] == w.values[known]).all()
        filled = (w.values == ERASED) & (rep.recovered != ERASED)
        # recovered symbols are always correct
        assert (rep.recovered[filled] == s[filled]).all()


def test_forward_residual_satisfies_parity(mdp7):
    F = mdp7.field
    s = _stream(mdp7, [3, 1, 4, 1, 5, 2])
    rep = dec.erasure_decode_forward(mdp7, erase_channel(s, pattern=[(1, 0), (2, 1), (4, 0)]))
    assert rep.status == "complete"
    vec = [Poly(F, rep.recovered[:, i]) for i in range(2)]
    assert all(p.is_zero() for p in mdp7.syndrome(vec))


def test_bidirectional_beats_forward(mdp7):
    s = _stream(mdp7, [1, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 6])
    assert s.shape[0] == 14
    w = erase_channel(s, pattern=MDP7_BIDIR_PATTERN)
    fwd = dec.erasure_decode_forward(mdp7, w)
    assert fwd.status == "partial" and len(fwd.unrecovered) == 5
    both = dec.erasure_decode_bidirectional(mdp7, w)
    assert both.status == "complete" and (both.recovered == s).all()
    assert any(tr.direction == "backward" and tr.solved for tr in both.trace)


def test_unrecoverable_whole_steps(mdp7):
    s = _stream(mdp7, [1, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 6])
    w = erase_channel(s, burst=(4, 6))
    for fn in (dec.erasure_decode_forward, dec.erasure_decode_bidirectional):
        rep = fn(mdp7, w)
        assert rep.status in ("partial", "failed")
        filled = (w.values == ERASED) & (rep.recovered != ERASED)
        assert (rep.recovered[filled] == s[filled]).all()


def test_stream_width_checked(mdp7):
    with pytest.raises(ValueError):
        dec.erasure_decode_forward(mdp7, np.zeros((3, 3), dtype=int))


# -- guard space


def test_guard_condition():
    assert dec.guard_space_condition([0, 5], 6, 2, 1, 2) == (True, "admissible")
    ok, reason = dec.guard_space_condition([0, 1], 6, 2, 1, 2)
    assert not ok and "first" in reason
    ok, _ = dec.guard_space_condition([4, 5], 6, 2, 1, 2)
    assert not ok
    ok, _ = dec.guard_space_condition([0, 2, 5, 3], 8, 2, 1, 3)
    assert not ok


def test_guard_space_recovery_exhaustive():
    from convcodes.constructions import complete_mdp_binomial
    code, _ = complete_mdp_binomial(2, 1, 1)
    F = code.field
    s = dec.codeword_array(code, [Poly(F, [5, 7, 11, 13, 17, 19])])
    start, steps = 2, code.L + code.parity_degree() + 1
    accepted = declined = 0
    for er in itertools.combinations(range(steps * 2), 3):
        pat = [(start + p // 2, p % 2) for p in er]
        res = dec.guard_space_recovery(code, erase_channel(s, pattern=pat), start)
        ok, _ = dec.guard_space_condition(list(er), steps * 2, 2, 1, code.L)
        assert res.accepted == ok
        if ok:
            accepted += 1
            assert (res.recovered == s[start:start + steps]).all()
        else:
            declined += 1
    assert accepted == 40 and declined == 16


def test_guard_space_clean_window(mdp7):
    s = _stream(mdp7, [1, 1, 1, 1])
    res = dec.guard_space_recovery(mdp7, s, 0)
    assert res.accepted and res.reason == "clean window"


# -- Viterbi


def _bruteforce_min(code, r, max_deg):
    F = code.field
    best = None
    for digits in itertools.product(range(F.q), repeat=code.k * (max_deg + 1)):
        u = [Poly(F, digits[i * (max_deg + 1):(i + 1) * (max_deg + 1)]) for i in range(code.k)]
        cw = dec.codeword_array(code, u)
        L = max(len(cw), len(r))
        a = np.zeros((L, code.n), dtype=int)
        b = np.zeros((L, code.n), dtype=int)
        a[:len(cw)] = cw
        b[:len(r)] = r
        d = int((a != b).sum())
        best = d if best is None else min(best, d)
    return best


def test_viterbi_noiseless(ex1):
    F = ex1.field
    u = [Poly(F, [1, 0, 1]), Poly(F, [0, 1, 1])]
    c = dec.codeword_array(ex1, u)
    res = dec.viterbi_decode(ex1, c)
    assert res.distance == 0 and (res.codeword[:len(c)] == c).all()
    again = dec.codeword_array(ex1.__class__(ex1.G_min), res.message, len(c))
    assert (again == c).all()


def test_viterbi_corrects_single_error(ex1):
    F = ex1.field
    u = [Poly(F, [1, 1, 0, 1]), Poly(F, [1, 0, 1])]
    c = dec.codeword_array(ex1, u)
    for t in range(len(c)):
        for i in range(3):
            r = c.copy()
            r[t, i] ^= 1
            res = dec.viterbi_decode(ex1, r)
            assert res.distance == 1 and (res.codeword[:len(c)] == c).all()


def test_viterbi_matches_bruteforce(ex1):
    rng = np.random.default_rng(21)
    for _ in range(6):
        r = rng.integers(0, 2, (5, 3))
        res = dec.viterbi_decode(ex1, r)
        assert res.distance == _bruteforce_min(ex1, r, 5)
        vec = [Poly(ex1.field, res.codeword[:, i]) for i in range(3)]
        assert bool(ex1.contains(vec))


def test_viterbi_deterministic(mdp7):
    r = np.array([[1, 2], [3, 4], [0, 6], [5, 5]])
    a, b = dec.viterbi_decode(mdp7, r), dec.viterbi_decode(mdp7, r)
    assert (a.codeword == b.codeword).all() and a.distance == b.distance


def test_viterbi_against_oracle_encoder(F2):
    G = [[[1, 1, 1], [1, 0, 1]]]
    code = ConvolutionalCode(PolyMatrix.from_entries(F2, G))
    u = [[1, 0, 1, 1]]
    c = oracles.encode(oracles.NaiveField(2), G, u)
    arr = np.array(c)
    r = arr.copy()
    r[1, 0] ^= 1
    r[4, 1] ^= 1
    res = dec.viterbi_decode(code, r)
    assert res.distance == 2
    assert (res.codeword[:len(arr)] == arr).all()
