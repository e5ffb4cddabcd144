"""Erasure recovery by sliding-window linear algebra, and Viterbi decoding.

Streams are ``(steps, n)`` integer arrays in generator coordinate order, with
:data:`convcodes.channels.ERASED` marking lost symbols.  Unless
``terminated=False`` a stream is taken to be a complete codeword: symbols
before step 0 and after the last step are zero, so the parity equations that
reach past the end of the stream are usable too.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .channels import ERASED
from .code import ConvolutionalCode, as_poly_vector, vector_to_array
from .galois import GF
from .metrics import partial_parity
from .minors import BudgetExceeded
from .sysrep import from_iso_coords, iso_from_code, to_iso_coords
from .trellis import Trellis


class DecodingFailure(ValueError):
    """Raised by the block decoder when the erased columns are dependent."""

    def __init__(self, message: str, rank: int, unknowns: int):
        super().__init__(message)
        self.rank = rank
        self.unknowns = unknowns


@dataclass
class WindowTrace:
    offset: int
    size: int
    solved: bool
    rank: int
    unknowns: int
    direction: str = "forward"
    event: str = "window"


@dataclass
class DecodeReport:
    recovered: np.ndarray
    trace: list[WindowTrace] = dc_field(default_factory=list)
    unrecovered: set[tuple[int, int]] = dc_field(default_factory=set)
    erasures: int = 0

    @property
    def status(self) -> str:
        if not self.unrecovered:
            return "complete"
        if len(self.unrecovered) == self.erasures:
            return "failed"
        return "partial"

    @property
    def recovered_count(self) -> int:
        return self.erasures - len(self.unrecovered)


def _unknown_set(values: np.ndarray) -> set[tuple[int, int]]:
    return {(int(t), int(i)) for t, i in zip(*np.nonzero(values == ERASED))}


# -- block codes


def erasure_decode_block(code_or_H, received, field: GF | None = None) -> np.ndarray:
    """Fill the erasures of one received block of a degree-zero code.

    Raises :class:`DecodingFailure` (carrying the rank of the erased columns)
    when the erasures are not uniquely determined.
    """
    if isinstance(code_or_H, ConvolutionalCode):
        code = code_or_H
        if code.degree != 0:
            raise ValueError("block decoding needs a code of degree 0")
        F = code.field
        H0 = code.parity_coefficients(1)[0]
    else:
        if field is None:
            raise ValueError("pass the field together with a constant parity-check matrix")
        F = field
        H0 = np.asarray(code_or_H, dtype=np.int64)
    w = np.asarray(received, dtype=np.int64).reshape(-1)
    if w.shape[0] != H0.shape[1]:
        raise ValueError("received word length does not match the code")
    er = np.nonzero(w == ERASED)[0]
    ok = np.nonzero(w != ERASED)[0]
    He = H0[:, er]
    rhs = F.neg(F.matmul(H0[:, ok], w[ok])) if ok.size else np.zeros(H0.shape[0], dtype=np.int64)
    rk = linalg.rank(F, He) if er.size else 0
    if rk < er.size:
        raise DecodingFailure(f"{er.size} erasures but the erased columns have rank {rk}",
                              rk, int(er.size))
    out = w.copy()
    if er.size:
        sol = linalg.solve(F, He, rhs)
        if sol is None:
            raise DecodingFailure("received word is inconsistent with the parity-check", rk,
                                  int(er.size))
        out[er] = sol[0]
    return out


# -- sliding window


class _Equations:
    """Parity equations sum_i H_i c_{tau-i} = 0 over a stream with zero padding."""

    def __init__(self, F: GF, Hs: list[np.ndarray], values: np.ndarray, tau_lo: int, tau_hi: int):
        self.F = F
        self.Hs = Hs
        self.nu = len(Hs) - 1
        self.values = values
        self.T, self.n = values.shape
        self.r = Hs[0].shape[0]
        self.tau_lo = tau_lo
        self.tau_hi = tau_hi

    def build(self, taus, steps):
        """(A, b, cols): unknown symbols of ``steps`` as columns; the rest moved to b."""
        F, n, r = self.F, self.n, self.r
        cols = [(t, i) for t in steps for i in range(n) if self.values[t, i] == ERASED]
        index = {c: a for a, c in enumerate(cols)}
        A = np.zeros((len(taus) * r, len(cols)), dtype=np.int64)
        b = np.zeros(len(taus) * r, dtype=np.int64)
        for e, tau in enumerate(taus):
            rows = slice(e * r, (e + 1) * r)
            for i, Hi in enumerate(self.Hs):
                t = tau - i
                if t < 0 or t >= self.T:
                    continue
                v = self.values[t]
                mask = v == ERASED
                if (~mask).any():
                    b[rows] = F.sub(b[rows], F.matmul(Hi[:, ~mask], v[~mask]))
                for pos in np.nonzero(mask)[0]:
                    A[rows, index[(t, int(pos))]] = Hi[:, pos]
        return A, b, cols


def _determined(F: GF, A, b, cols):
    """Uniquely determined unknowns of A x = b as {col: value}, rank; None if inconsistent."""
    sol = linalg.solve(F, A, b)
    rk = linalg.rank(F, A) if A.size else 0
    if sol is None:
        return None, rk
    x, N = sol
    N = np.asarray(N).reshape(-1, len(cols))
    free = N.any(axis=0) if N.size else np.zeros(len(cols), dtype=bool)
    return {c: int(x[a]) for a, c in enumerate(cols) if not free[a]}, rk


def _sweep(F: GF, Hs, values: np.ndarray, tau_lo: int, tau_hi: int, jmax: int,
           direction: str, trace: list[WindowTrace]) -> bool:
    """One left-to-right pass filling erasures in place; returns True on any progress."""
    eq = _Equations(F, Hs, values, tau_lo, tau_hi)
    T, nu = eq.T, eq.nu
    progress = False
    awaiting_guard = False
    for t in range(T):
        if awaiting_guard and t >= nu and not (values[t - nu:t] == ERASED).any():
            trace.append(WindowTrace(t, 0, True, 0, 0, direction, "guard"))
            awaiting_guard = False
        if not (values[t] == ERASED).any():
            continue
        solved = False
        for j in range(jmax + 1):
            taus = [tau for tau in range(t, t + j + 1) if tau_lo <= tau <= tau_hi]
            if not taus:
                if t + j > tau_hi:
                    break
                continue
            steps = range(max(0, t - nu), min(t + j, T - 1) + 1)
            A, b, cols = eq.build(taus, steps)
            found, rk = _determined(F, A, b, cols)
            if found is None:
                trace.append(WindowTrace(t, j, False, rk, len(cols), direction, "inconsistent"))
                break
            here = [c for c in cols if c[0] == t]
            if all(c in found for c in here):
                for (s, i), v in found.items():
                    values[s, i] = v
                progress = True
                solved = True
                trace.append(WindowTrace(t, j, True, rk, len(cols), direction))
                break
            if t + j >= tau_hi:
                break
        if not solved:
            trace.append(WindowTrace(t, jmax, False, -1, int((values[t] == ERASED).sum()),
                                     direction, "unrecovered"))
            awaiting_guard = True
    return progress


def _check_stream(code: ConvolutionalCode, w) -> np.ndarray:
    values = np.atleast_2d(np.asarray(getattr(w, "values", w), dtype=np.int64))
    if values.shape[1] != code.n:
        raise ValueError(f"stream width {values.shape[1]} does not match n = {code.n}")
    return values


def erasure_decode_forward(code: ConvolutionalCode, w, jmax: int | None = None,
                           terminated: bool = True) -> DecodeReport:
    """Left-to-right sliding-window erasure recovery.

    At the first step t still holding erasures, windows t..t+j for
    j = 0..jmax (default L) are tried; the window's erasures plus any
    unrecovered symbols of the nu preceding steps are the unknowns.  Symbols
    are filled only when the window equations pin them down uniquely.
    """
    values = _check_stream(code, w).copy()
    F = code.field
    Hs = code.parity_coefficients(code.parity_degree() + 1)
    nu = len(Hs) - 1
    T = values.shape[0]
    jmax = code.L if jmax is None else jmax
    erasures = _unknown_set(values)
    trace: list[WindowTrace] = []
    _sweep(F, Hs, values, 0, T - 1 + (nu if terminated else 0), jmax, "forward", trace)
    return DecodeReport(values, trace, _unknown_set(values), len(erasures))


def erasure_decode_bidirectional(code: ConvolutionalCode, w, jmax: int | None = None,
                                 terminated: bool = True) -> DecodeReport:
    """Forward pass, then backward passes on the reversed stream with the
    coefficient-reversed parity-check, alternating until nothing changes."""
    values = _check_stream(code, w).copy()
    F = code.field
    Hs = code.parity_coefficients(code.parity_degree() + 1)
    nu = len(Hs) - 1
    T = values.shape[0]
    jmax = code.L if jmax is None else jmax
    erasures = _unknown_set(values)
    trace: list[WindowTrace] = []
    hi = T - 1 + nu
    _sweep(F, Hs, values, 0, hi if terminated else T - 1, jmax, "forward", trace)
    Hrev = Hs[::-1]
    while (values == ERASED).any():
        rev = values[::-1].copy()
        moved = _sweep(F, Hrev, rev, 0 if terminated else nu, hi, jmax, "backward", trace)
        values = rev[::-1].copy()
        if not moved:
            break
        if not _sweep(F, Hs, values, 0, hi if terminated else T - 1, jmax, "forward", trace):
            break
    return DecodeReport(values, trace, _unknown_set(values), len(erasures))


# -- guard space


@dataclass
class GuardSpaceResult:
    accepted: bool
    reason: str
    window_start: int
    recovered: np.ndarray | None = None
    rank: int = 0
    unknowns: int = 0


def guard_space_condition(erased_positions, window_symbols: int, n: int, k: int, L: int):
    """Check the erasure distribution inside a window; returns (ok, reason).

    ``erased_positions`` are 0-based symbol offsets within the window.
    """
    pos = sorted(erased_positions)
    if len(pos) > (L + 1) * (n - k):
        return False, f"{len(pos)} erasures exceed {(L + 1) * (n - k)}"
    for s in range(1, L + 2):
        head = sum(1 for p in pos if p < s * n)
        tail = sum(1 for p in pos if p >= window_symbols - s * n)
        if head > s * (n - k):
            return False, f"{head} erasures in the first {s * n} symbols exceed {s * (n - k)}"
        if tail > s * (n - k):
            return False, f"{tail} erasures in the last {s * n} symbols exceed {s * (n - k)}"
    return True, "admissible"


def guard_space_recovery(code: ConvolutionalCode, w, window_start: int) -> GuardSpaceResult:
    """Recover every symbol of the window of L + nu + 1 steps starting at
    ``window_start`` from the partial parity-check alone, without history.

    Declines when the erasure distribution is outside the admissible budget
    or the solution is not unique; the caller then slides the window.
    """
    values = _check_stream(code, w)
    F = code.field
    n, k, L = code.n, code.k, code.L
    nu = code.parity_degree()
    steps = L + nu + 1
    T = values.shape[0]
    if not 0 <= window_start < T:
        raise ValueError("window start outside the stream")
    win = np.zeros((steps, n), dtype=np.int64)
    avail = min(steps, T - window_start)
    win[:avail] = values[window_start:window_start + avail]
    flat = win.reshape(-1)
    er = np.nonzero(flat == ERASED)[0]
    ok, reason = guard_space_condition(er.tolist(), steps * n, n, k, L)
    if not ok:
        return GuardSpaceResult(False, reason, window_start, unknowns=int(er.size))
    if not er.size:
        return GuardSpaceResult(True, "clean window", window_start, win[:avail].copy())
    P = partial_parity(code, L)
    known = np.nonzero(flat != ERASED)[0]
    A = P[:, er]
    b = F.neg(F.matmul(P[:, known], flat[known]))
    rk = linalg.rank(F, A)
    if rk < er.size:
        return GuardSpaceResult(False, f"erased columns have rank {rk} < {er.size}", window_start,
                                rank=rk, unknowns=int(er.size))
    sol = linalg.solve(F, A, b)
    if sol is None:
        return GuardSpaceResult(False, "window is inconsistent with the code", window_start,
                                rank=rk, unknowns=int(er.size))
    out = flat.copy()
    out[er] = sol[0]
    return GuardSpaceResult(True, reason, window_start, out.reshape(steps, n)[:avail], rk,
                            int(er.size))


# -- Viterbi


@dataclass
class ViterbiResult:
    codeword: np.ndarray  # (steps, n), generator order, padded to the received length
    message: list
    distance: int
    inputs: np.ndarray  # ISO input sequence along the decoded path


def viterbi_decode(code: ConvolutionalCode, received, budget: int | None = None) -> ViterbiResult:
    """Minimum Hamming distance codeword on the minimal ISO trellis.

    Survivors are kept per state; a candidate ending at the zero state is
    charged the weight of the received symbols after its end.  The search
    stops once every surviving label is at least the best complete candidate.
    Ties go to the smallest predecessor state, then the smallest input.
    """
    F = code.field
    r = np.atleast_2d(np.asarray(received, dtype=np.int64))
    if r.shape[1] != code.n:
        raise ValueError(f"received width {r.shape[1]} does not match n = {code.n}")
    sys = iso_from_code(code)
    try:
        tr = Trellis(sys, budget)
    except BudgetExceeded as exc:
        raise BudgetExceeded(f"Viterbi decoding: {exc}") from None
    r_iso = to_iso_coords(sys, r)
    T = r.shape[0]
    suffix = np.zeros(T + 1, dtype=np.int64)
    for t in range(T - 1, -1, -1):
        suffix[t] = suffix[t + 1] + int(np.count_nonzero(r_iso[t]))
    S, U = tr.num_states, tr.num_inputs
    INF = np.iinfo(np.int64).max // 4
    dist = np.full(S, INF, dtype=np.int64)
    dist[0] = 0
    back = []
    best, best_t = INF, None
    flat_next = tr.next_state.reshape(-1)
    order_idx = np.arange(S * U)
    t = 0
    while True:
        sym = r_iso[t] if t < T else np.zeros(code.n, dtype=np.int64)
        cost = np.count_nonzero(tr.outputs != sym[None, None, :], axis=-1)
        live = dist < best
        cand = np.where(live[:, None], dist[:, None] + cost, INF).reshape(-1)
        # per next state: minimal cost, ties to smallest (state, input) index
        srt = np.lexsort((order_idx, cand, flat_next))
        first = np.ones(srt.size, dtype=bool)
        first[1:] = flat_next[srt[1:]] != flat_next[srt[:-1]]
        pick = srt[first]
        new = np.full(S, INF, dtype=np.int64)
        ptr = np.full(S, -1, dtype=np.int64)
        new[flat_next[pick]] = cand[pick]
        ptr[flat_next[pick]] = pick
        ptr[new >= INF] = -1
        back.append(ptr)
        dist = new
        t += 1
        if dist[0] < INF:
            total = int(dist[0]) + int(suffix[min(t, T)])
            if total < best:
                best, best_t = total, t
        if not (dist < best).any():
            break
    # trace back from the zero state at best_t
    state = 0
    inputs, outputs = [], []
    for s in range(best_t - 1, -1, -1):
        idx = int(back[s][state])
        x1, u = divmod(idx, U)
        inputs.append(tr.inputs[u])
        outputs.append(tr.outputs[x1, u])
        state = x1
    inputs = np.array(inputs[::-1], dtype=np.int64).reshape(-1, sys.k)
    path = np.array(outputs[::-1], dtype=np.int64).reshape(-1, code.n)
    length = max(T, path.shape[0])
    cw = np.zeros((length, code.n), dtype=np.int64)
    cw[:path.shape[0]] = from_iso_coords(sys, path)
    padded = np.zeros((length, code.n), dtype=np.int64)
    padded[:T] = r
    distance = int(np.count_nonzero(cw != padded))
    poly_cw = [c for c in as_poly_vector(F, [list(cw[:, j]) for j in range(code.n)])]
    witness = code.contains(poly_cw).witness
    return ViterbiResult(cw, witness, distance, inputs)


def codeword_array(code: ConvolutionalCode, u, steps: int | None = None) -> np.ndarray:
    """Encode a polynomial message to a (steps, n) stream in generator order."""
    return vector_to_array(code.encode(u), steps)
