"""Distances, distance bounds and optimality predicates."""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from .code import ConvolutionalCode
from .galois import GF
from .minors import (BudgetExceeded, full_size_column_minors,
                     not_trivially_zero_minors_nonzero)
from .poly import Poly
from .verdict import Verdict

ENUM_BUDGET = int(os.environ.get("CONVCODES_ENUM_BUDGET", 2**24))
_TABLE_ROWS = 2**16


def weight(v) -> int:
    """Total Hamming weight over all coefficient vectors."""
    if isinstance(v, np.ndarray):
        return int(np.count_nonzero(v))
    return sum(p.weight() if isinstance(p, Poly) else int(np.count_nonzero(p)) for p in v)


# -- sliding matrices


def sliding_generator(code: ConvolutionalCode, j: int) -> np.ndarray:
    """Block upper triangular [[G0 .. Gj], [0 G0 ..], ...] of size (j+1)k x (j+1)n."""
    k, n = code.k, code.n
    Gs = code.G_min.coefficient_list(j + 1)
    out = np.zeros(((j + 1) * k, (j + 1) * n), dtype=np.int64)
    for r in range(j + 1):
        for c in range(r, j + 1):
            out[r * k:(r + 1) * k, c * n:(c + 1) * n] = Gs[c - r]
    return out


def sliding_parity(code: ConvolutionalCode, j: int) -> np.ndarray:
    """Block lower triangular [[H0], [H1 H0], ...] of size (j+1)(n-k) x (j+1)n."""
    r_, n = code.n - code.k, code.n
    Hs = code.parity_coefficients(j + 1)
    out = np.zeros(((j + 1) * r_, (j + 1) * n), dtype=np.int64)
    for r in range(j + 1):
        for c in range(r + 1):
            out[r * r_:(r + 1) * r_, c * n:(c + 1) * n] = Hs[r - c]
    return out


def partial_parity(code: ConvolutionalCode, L: int | None = None) -> np.ndarray:
    """(L+1)(n-k) x (nu+L+1)n matrix with H_nu ... H_0 along each block row."""
    L = code.L if L is None else L
    r_, n = code.n - code.k, code.n
    nu = code.parity_degree()
    Hs = code.parity_coefficients(nu + 1)
    out = np.zeros(((L + 1) * r_, (nu + L + 1) * n), dtype=np.int64)
    for b in range(L + 1):
        for i in range(nu + 1):
            col = b + (nu - i)
            out[b * r_:(b + 1) * r_, col * n:(col + 1) * n] = Hs[i]
    return out


def reverse_sliding_parity(code: ConvolutionalCode, L: int | None = None) -> np.ndarray:
    """Block upper triangular [[H_nu .. H_{nu-L}], ..., [0 .. H_nu]]."""
    L = code.L if L is None else L
    r_, n = code.n - code.k, code.n
    nu = code.parity_degree()
    Hs = code.parity_coefficients(nu + 1)
    out = np.zeros(((L + 1) * r_, (L + 1) * n), dtype=np.int64)
    for r in range(L + 1):
        for c in range(r, L + 1):
            i = nu - (c - r)
            if i >= 0:
                out[r * r_:(r + 1) * r_, c * n:(c + 1) * n] = Hs[i]
    return out


# -- exhaustive minimum weight


def _span_table(F: GF, rows: np.ndarray) -> np.ndarray:
    table = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for r in rows:
        multiples = F.mul(F.elements()[:, None], r[None, :])  # (q, width)
        table = F.add(table[None, :, :], multiples[:, None, :]).reshape(-1, rows.shape[1])
    return table


def min_weight_nonzero(F: GF, basis: np.ndarray, lead_limit: int | None = None,
                       budget: int | None = None) -> int:
    """Minimum weight of sum_i a_i basis[i] over coefficient vectors whose first
    nonzero index is below ``lead_limit``.

    Rows are assumed linearly independent, so only combinations with leading
    coefficient 1 are visited.
    """
    basis = np.asarray(basis, dtype=np.int64)
    m, width = basis.shape
    lead_limit = m if lead_limit is None else lead_limit
    budget = ENUM_BUDGET if budget is None else budget
    q = F.q
    total = sum(q ** (m - 1 - l) for l in range(lead_limit))
    if total > budget:
        raise BudgetExceeded(f"{total} combinations exceed the enumeration budget {budget}")
    t = 0
    while t < m and q ** (t + 1) <= _TABLE_ROWS:
        t += 1
    best = None
    for lead in range(lead_limit):
        rest = basis[lead + 1:]
        split = len(rest) - min(t, len(rest))
        table = _span_table(F, rest[split:])
        mid = rest[:split]
        for coeffs in product(range(q), repeat=split):
            offset = basis[lead].copy()
            for a, r in zip(coeffs, mid):
                if a:
                    offset = F.add(offset, F.mul(a, r))
            w = int(np.count_nonzero(F.add(table, offset[None, :]), axis=1).min())
            if best is None or w < best:
                best = w
    return best


# -- distances


def column_distance(code: ConvolutionalCode, j: int, budget: int | None = None) -> int:
    """Minimum weight of [u_0 .. u_j] G_j^c over u_0 != 0."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    if not code.noncatastrophic:
        raise ValueError("column distances are defined here for noncatastrophic codes")
    budget = ENUM_BUDGET if budget is None else budget
    if code.field.q ** (code.k * (j + 1)) > budget:
        raise BudgetExceeded(f"q^(k(j+1)) = {code.field.q ** (code.k * (j + 1))} exceeds {budget}")
    return min_weight_nonzero(code.field, sliding_generator(code, j), code.k, budget)


def column_distances(code: ConvolutionalCode, jmax: int, budget: int | None = None) -> list[int]:
    return [column_distance(code, j, budget) for j in range(jmax + 1)]


def _free_distance_bruteforce(code: ConvolutionalCode, cap: int, budget=None) -> int:
    if cap < 0:
        raise ValueError("message degree cap must be nonnegative")
    k, n = code.k, code.n
    mu = code.memory
    T = cap + mu + 1
    Gs = code.G_min.coefficient_list(mu + 1)
    rows = []
    for t in range(cap + 1):
        for i in range(k):
            r = np.zeros(T * n, dtype=np.int64)
            for l in range(mu + 1):
                r[(t + l) * n:(t + l + 1) * n] = Gs[l][i]
            rows.append(r)
    return min_weight_nonzero(code.field, np.array(rows), budget=budget)


def _free_distance_stategraph(code: ConvolutionalCode) -> int:
    from .sysrep import iso_from_code
    from .trellis import Trellis

    if not code.noncatastrophic:
        raise ValueError("state-graph search needs a noncatastrophic code; pass a cap instead")
    tr = Trellis(iso_from_code(code))
    W = tr.weights
    nxt = tr.next_state
    best = None
    dist = np.full(tr.num_states, np.iinfo(np.int64).max, dtype=np.int64)
    heap = []
    for u in range(1, tr.num_inputs):
        w, s = int(W[0, u]), int(nxt[0, u])
        if s == 0:
            best = w if best is None else min(best, w)
        elif w < dist[s]:
            dist[s] = w
            heapq.heappush(heap, (w, s))
    while heap:
        d, s = heapq.heappop(heap)
        if d > dist[s]:
            continue
        if best is not None and d >= best:
            break
        cand = d + W[s]
        targets = nxt[s]
        home = targets == 0
        if home.any():
            b = int(cand[home].min())
            best = b if best is None else min(best, b)
        improve = (~home) & (cand < dist[targets])
        for t_, c_ in zip(targets[improve], cand[improve]):
            if c_ < dist[t_]:
                dist[t_] = c_
                heapq.heappush(heap, (int(c_), int(t_)))
    return best


def free_distance(code: ConvolutionalCode, method: str = "stategraph", cap: int | None = None,
                  budget: int | None = None) -> int:
    """Free distance.

    ``stategraph`` runs a shortest-path search over the minimal trellis from
    the zero state back to it.  ``bruteforce`` enumerates messages with
    component degrees at most ``cap`` (an upper bound on d_free that is exact
    once the cap is large enough).
    """
    if method == "stategraph":
        return _free_distance_stategraph(code)
    if method == "bruteforce":
        if cap is None:
            if not code.noncatastrophic:
                raise ValueError("catastrophic code: an explicit message-degree cap is required")
            cap = code.degree + 1
        return _free_distance_bruteforce(code, cap, budget)
    raise ValueError(f"unknown method {method!r}")


# -- bounds


def generalized_singleton(n: int, k: int, delta: int) -> int:
    return (n - k) * (delta // k + 1) + delta + 1


def column_bound(n: int, k: int, j: int) -> int:
    return (n - k) * (j + 1) + 1


def bounds(code: ConvolutionalCode):
    n, k, d = code.params
    return generalized_singleton(n, k, d), (lambda j: column_bound(n, k, j))


@dataclass
class DistanceProfile:
    d_free: int | None
    d_col: list[int]
    singleton: int
    column_bounds: list[int]
    certified: bool = True
    notes: list[str] = dc_field(default_factory=list)


def distance_profile(code: ConvolutionalCode, jmax: int | None = None, cap: int | None = None,
                     budget: int | None = None) -> DistanceProfile:
    n, k, d = code.params
    jmax = code.L if jmax is None else jmax
    single = generalized_singleton(n, k, d)
    cb = [column_bound(n, k, j) for j in range(jmax + 1)]
    notes = []
    if code.noncatastrophic:
        dfree = free_distance(code, "stategraph")
        dcol = []
        for j in range(jmax + 1):
            try:
                dcol.append(column_distance(code, j, budget))
            except BudgetExceeded as exc:
                notes.append(f"column distances stop at j={j - 1}: {exc}")
                break
        return DistanceProfile(dfree, dcol, single, cb, True, notes)
    cap = d + 1 if cap is None else cap
    dfree = free_distance(code, "bruteforce", cap=cap, budget=budget)
    notes.append(f"catastrophic code: free distance from messages of degree <= {cap}, not certified")
    return DistanceProfile(dfree, [], single, cb, False, notes)


# -- optimality predicates


def is_mds(code: ConvolutionalCode) -> Verdict:
    single = generalized_singleton(*code.params)
    d = free_distance(code)
    return Verdict(d == single, witness=d, detail=f"d_free={d}, bound={single}")


def is_smds(code: ConvolutionalCode, budget: int | None = None) -> Verdict:
    single = generalized_singleton(*code.params)
    d = column_distance(code, code.M, budget)
    return Verdict(d == single, witness=d, detail=f"d_M={d}, bound={single}")


def _mdp_bounds(code: ConvolutionalCode, L: int):
    r_, n = code.n - code.k, code.n
    size = (L + 1) * r_
    hi = [(L + 1) * n - 1] * size
    for s in range(1, L + 1):
        hi[s * r_ - 1] = min(hi[s * r_ - 1], s * n - 1)
    return hi


def is_mdp(code: ConvolutionalCode, method: str = "distances", budget: int | None = None) -> Verdict:
    """MDP test by the L-th column distance or by the admissible minors of the sliding parity-check."""
    if not code.noncatastrophic:
        raise ValueError("MDP is defined here for noncatastrophic codes")
    L = code.L
    n, k = code.n, code.k
    if method == "distances":
        d = column_distance(code, L, budget)
        target = column_bound(n, k, L)
        return Verdict(d == target, witness=d, detail=f"d_{L}^c={d}, bound={target}")
    if method == "minors":
        M = sliding_parity(code, L)
        return full_size_column_minors(code.field, M, hi=_mdp_bounds(code, L), budget=budget)
    raise ValueError(f"unknown method {method!r}")


def is_reverse_mdp(code: ConvolutionalCode, method: str = "auto", budget: int | None = None) -> Verdict:
    """Whether the reverse code is MDP as well (defined for MDP codes only)."""
    if not is_mdp(code, budget=budget):
        raise ValueError("reverse MDP is only defined for MDP codes")
    r_ = code.n - code.k
    if method == "auto":
        method = "minors" if code.degree % r_ == 0 else "reverse"
    if method == "reverse":
        return is_mdp(code.reverse(), budget=budget)
    if method == "minors":
        if code.degree % r_:
            raise ValueError("minor criterion needs (n-k) | delta")
        L, n = code.L, code.n
        size = (L + 1) * r_
        lo = [0] * size
        for s in range(1, L + 1):
            lo[s * r_] = max(lo[s * r_], s * n)
        return full_size_column_minors(code.field, reverse_sliding_parity(code, L), lo=lo,
                                       budget=budget)
    raise ValueError(f"unknown method {method!r}")


def is_complete_mdp(code: ConvolutionalCode, budget: int | None = None) -> Verdict:
    """Admissible full-size minors of the partial parity-check are all nonzero."""
    if not code.noncatastrophic:
        raise ValueError("complete MDP needs a noncatastrophic code")
    r_, n = code.n - code.k, code.n
    if code.degree % r_:
        raise ValueError("complete MDP codes need (n-k) | delta")
    L, nu = code.L, code.parity_degree()
    M = partial_parity(code, L)
    size = (L + 1) * r_
    lo = [0] * size
    hi = [M.shape[1] - 1] * size
    for s in range(1, L + 1):
        lo[s * r_] = max(lo[s * r_], s * n)
        hi[s * r_ - 1] = min(hi[s * r_ - 1], s * n + nu * n - 1)
    return full_size_column_minors(code.field, M, lo=lo, hi=hi, budget=budget)


def is_superregular(F: GF, A, shape: str = "general", budget: int | None = None) -> Verdict:
    """All not trivially zero minors are nonzero.

    ``general`` takes the zero pattern of A itself; ``lower_triangular_toeplitz``
    takes the full lower triangle as the structural support.
    """
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("superregularity is tested on square matrices")
    if shape == "general":
        mask = A != 0
    elif shape == "lower_triangular_toeplitz":
        mask = np.tril(np.ones(A.shape, dtype=bool))
    else:
        raise ValueError(f"unknown shape {shape!r}")
    return not_trivially_zero_minors_nonzero(F, A, mask, budget=budget)
