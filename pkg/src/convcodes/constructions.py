"""Explicit constructions of MDS, MDP and complete MDP convolutional codes.

Each builder validates its parameter constraints and attaches a
:class:`ConstructionRecipe` to the returned code as ``code.recipe``.  When a
field-size guarantee is not met the code is still built, with
``recipe.guaranteed = False``, and the predicates in :mod:`convcodes.metrics`
decide optimality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .code import ConvolutionalCode
from .galois import GF, MAX_FIELD_SIZE, field_create, is_prime
from .metrics import is_superregular
from .poly import Poly, PolyMatrix, hstack


@dataclass
class ConstructionRecipe:
    name: str
    params: dict
    guaranteed: bool = True
    notes: list[str] = dc_field(default_factory=list)


def _tag(code: ConvolutionalCode, recipe: ConstructionRecipe) -> ConvolutionalCode:
    code.recipe = recipe
    return code


def _field_params(F: GF) -> dict:
    return {"p": F.p, "N": F.N}


def _matrix_poly(F: GF, blocks) -> PolyMatrix:
    return PolyMatrix.from_coefficients(F, blocks)


# -- MDS


def justesen_delta(n: int, q: int) -> int:
    if n == 2:
        return 2 * q // 9
    if n <= 5:
        return q // 3
    return q // 2


def justesen_mds(n: int, field: GF) -> ConvolutionalCode:
    """Rate 1/n code with generator entries g_1(z alpha^(-s_j)), g_1 = prod_{k<=delta}(z - alpha^k)."""
    F = field
    q = F.q
    if n < 2:
        raise ValueError("need n >= 2")
    if q < n + 1:
        raise ValueError(f"field too small: need q >= n + 1 = {n + 1}")
    delta = justesen_delta(n, q)
    if delta < 1:
        raise ValueError(f"degree formula gives delta = {delta} for q = {q}")
    g1 = Poly.from_roots(F, [int(F.alpha_pow(k)) for k in range(1, delta + 1)])
    entries = [g1]
    for j in range(2, n + 1):
        s_j = -(-(j - 1) * (q - 1) // n)
        entries.append(g1.scale_argument(int(F.alpha_pow(-s_j))))
    code = ConvolutionalCode(PolyMatrix.from_entries(F, [entries]))
    return _tag(code, ConstructionRecipe("justesen", {"n": n, "delta": delta, **_field_params(F)}))


def gll_mds(n: int, delta: int, field: GF) -> ConvolutionalCode:
    """Rate 1/n code G(z) = sum_{i<=delta} z^i [1, a^i, a^(2i), ..., a^((n-1)i)]."""
    F = field
    if n < 2:
        raise ValueError("need n >= 2")
    if F.q < n + 1:
        raise ValueError(f"field too small: need q >= n + 1 = {n + 1}")
    if not 0 <= delta <= n - 1:
        raise ValueError("need 0 <= delta <= n - 1")
    blocks = [np.array([[int(F.alpha_pow(j * i)) for j in range(n)]]) for i in range(delta + 1)]
    code = ConvolutionalCode(_matrix_poly(F, blocks))
    return _tag(code, ConstructionRecipe("gll", {"n": n, "delta": delta, **_field_params(F)}))


def smith_mds_check(n: int, k: int, delta: int, a: int, p: int, r: int):
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if a * n != p**r - 1:
        raise ValueError(f"need a*n = p^r - 1, got {a * n} != {p**r - 1}")
    # a >= floor(delta/k) + 1 + delta/(n-k), compared without rounding
    if a * (n - k) < (delta // k + 1) * (n - k) + delta:
        raise ValueError("a is below the required bound")


def smith_mds(n: int, k: int, delta: int, a: int, p: int, r: int) -> ConvolutionalCode:
    """Quasi-cyclic construction from the polyphase split of prod_{i<N-K}(z - alpha^i)."""
    smith_mds_check(n, k, delta, a, p, r)
    if not is_prime(p):
        raise ValueError("p must be prime")
    F = field_create(p, r)
    N = a * n
    K = N - (n - k) * (delta // k + 1) - delta
    g = Poly.from_roots(F, [int(F.alpha_pow(i)) for i in range(N - K)])
    phases = [Poly(F, np.asarray(g.coeffs[l::n], dtype=np.int64)) for l in range(n)]
    z = Poly.monomial(F, 1)
    rows = []
    for i in range(k):
        rows.append([z * phases[n - i + j] if j < i else phases[j - i] for j in range(n)])
    code = ConvolutionalCode(PolyMatrix.from_entries(F, rows))
    rec = ConstructionRecipe("smith", {"n": n, "k": k, "delta": delta, "a": a, "p": p, "N": r})
    if code.degree != delta:
        rec.notes.append(f"built code has degree {code.degree}")
    return _tag(code, rec)


def polyphase(g: Poly, n: int) -> list[Poly]:
    """g(z) = sum_l g_l(z^n) z^l."""
    return [Poly(g.field, np.asarray(g.coeffs[l::n], dtype=np.int64)) for l in range(n)]


# -- superregular matrices and MDP codes


def binomial_toeplitz(b: int) -> np.ndarray:
    """b x b lower triangular Toeplitz matrix with first column C(b-1, i) over the integers."""
    T = np.zeros((b, b), dtype=object)
    for i in range(b):
        for j in range(i + 1):
            T[i, j] = math.comb(b - 1, i - j)
    return T


def binomial_superregular(b: int, max_prime: int = MAX_FIELD_SIZE):
    """Return (T mod p, p, field) for the smallest prime p making T superregular."""
    if b < 1:
        raise ValueError("b must be >= 1")
    T = binomial_toeplitz(b)
    for p in range(2, max_prime + 1):
        if not is_prime(p):
            continue
        F = field_create(p)
        Tp = np.array(T % p, dtype=np.int64)
        if is_superregular(F, Tp, "lower_triangular_toeplitz"):
            return Tp, p, F
    raise ValueError(f"no prime below {max_prime} makes the matrix superregular")


def superregular_index_sets(n: int, k: int, L: int) -> tuple[list[int], list[int]]:
    """Row and column indices (0-based) selected from the (L+1)(2n-k-1) square matrix."""
    rows, cols = [], []
    for j in range(L + 1):
        rows.extend(range((j + 1) * n + j * (n - k - 1), (j + 1) * (2 * n - k - 1) + 1))
        cols.extend(range(j * n + j * (n - k - 1) + 1, (j + 1) * n + j * (n - k - 1) + 1))
    return [i - 1 for i in rows], [j - 1 for j in cols]


def mdp_from_superregular(n: int, k: int, delta: int, T, field: GF,
                          check: bool = True) -> ConvolutionalCode:
    """Parity-check blocks read off a lower triangular superregular matrix."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if delta % (n - k):
        raise ValueError("need (n-k) | delta")
    if not k > delta:
        raise ValueError("need k > delta")
    L = delta // k + delta // (n - k)
    r = (L + 1) * (2 * n - k - 1)
    T = np.asarray(T, dtype=np.int64)
    if T.shape != (r, r):
        raise ValueError(f"T must be {r} x {r}")
    if check and not is_superregular(field, T, "lower_triangular_toeplitz"):
        raise ValueError("T is not lower triangular superregular")
    I, J = superregular_index_sets(n, k, L)
    HL = T[np.ix_(I, J)]
    rr = n - k
    blocks = [HL[i * rr:(i + 1) * rr, :n] for i in range(L + 1)]
    code = ConvolutionalCode.from_parity_check(_matrix_poly(field, blocks))
    return _tag(code, ConstructionRecipe("superregular", {"n": n, "k": k, "delta": delta,
                                                          **_field_params(field)}))


def _pow2_alpha(F: GF, e: int) -> int:
    return int(F.alpha_pow(pow(2, e, F.q - 1))) if F.q > 2 else 1


def anp_blocks(n: int, k: int, delta: int, field: GF) -> list[np.ndarray]:
    """Hankel blocks T_i[a][b] = alpha^(2^(i m + a + b)), i = 0..L, m = max(n-k, k)."""
    m = max(n - k, k)
    L = delta // k + delta // (n - k)
    return [np.array([[_pow2_alpha(field, i * m + a + b) for b in range(m)] for a in range(m)],
                     dtype=np.int64) for i in range(L + 1)]


def anp_superregular(n: int, k: int, delta: int, p: int, N: int):
    """Block lower triangular Toeplitz matrix of the Hankel blocks; returns (matrix, field, recipe)."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    F = field_create(p, N)
    m = max(n - k, k)
    L = delta // k + delta // (n - k)
    blocks = anp_blocks(n, k, delta, F)
    T = np.zeros(((L + 1) * m, (L + 1) * m), dtype=np.int64)
    for i in range(L + 1):
        for j in range(i + 1):
            T[i * m:(i + 1) * m, j * m:(j + 1) * m] = blocks[i - j]
    rec = ConstructionRecipe("anp-superregular", {"n": n, "k": k, "delta": delta, "p": p, "N": N},
                             guaranteed=N >= 2 ** (m * (L + 2) - 1))
    return T, F, rec


def anp_mdp(n: int, k: int, delta: int, field: GF) -> ConvolutionalCode:
    """Parity-check [A(z) B(z)] with A_0 = I and A_1..A_nu solving the block Hankel system."""
    F = field
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    rr = n - k
    if delta % rr:
        raise ValueError("need (n-k) | delta")
    nu = delta // rr
    L = delta // k + delta // rr
    m = max(rr, k)
    Hb = [T[:rr, :k] for T in anp_blocks(n, k, delta, F)]
    A = [np.eye(rr, dtype=np.int64)] + [np.zeros((rr, rr), dtype=np.int64) for _ in range(nu)]
    if L > nu and nu > 0:
        # sum_{j=1..nu} A_j Hb[i-j] = -Hb[i] for i = nu+1..L, unknown X = [A_nu .. A_1]
        M = np.zeros((nu * rr, (L - nu) * k), dtype=np.int64)
        R = np.zeros((rr, (L - nu) * k), dtype=np.int64)
        for b, i in enumerate(range(nu + 1, L + 1)):
            R[:, b * k:(b + 1) * k] = F.neg(Hb[i])
            for a in range(nu):
                j = nu - a
                M[a * rr:(a + 1) * rr, b * k:(b + 1) * k] = Hb[i - j]
        X = np.zeros((rr, nu * rr), dtype=np.int64)
        for row in range(rr):
            sol = linalg.solve(F, M.T, R[row])
            if sol is None:
                raise ValueError("the block Hankel system has no solution")
            X[row] = sol[0]
        for a in range(nu):
            A[nu - a] = X[:, a * rr:(a + 1) * rr]
    B = []
    for i in range(nu + 1):
        acc = np.zeros((rr, k), dtype=np.int64)
        for j in range(i + 1):
            acc = F.add(acc, F.matmul(A[j], Hb[i - j]))
        B.append(acc)
    H = hstack([_matrix_poly(F, A), _matrix_poly(F, B)])
    code = ConvolutionalCode.from_parity_check(H)
    code.parity_AB = H
    guaranteed = F.q >= F.p ** (2 * m * (L + 1) + n - 2)
    return _tag(code, ConstructionRecipe("anp", {"n": n, "k": k, "delta": delta,
                                                 **_field_params(F)}, guaranteed))


# -- complete MDP


def complete_mdp_bound(n: int, k: int, delta: int) -> float:
    """Characteristic bound C(nu n + k, floor((nu n + k)/2))^e * e'^(e/2), e = (n-k)(L+1)."""
    nu = delta // (n - k)
    L = delta // k + delta // (n - k)
    top = nu * n + k
    e = (n - k) * (L + 1)
    base = math.comb(top, top // 2) ** e
    root = e ** (e // 2)
    if e % 2:
        return base * root * math.sqrt(e)
    return base * root


def binomial_parity_blocks(n: int, k: int, delta: int) -> list[np.ndarray]:
    """H_i[r][c] = C(nu n + k, i n + k + r - c), zero outside 0..nu n + k (integers)."""
    nu = delta // (n - k)
    top = nu * n + k
    out = []
    for i in range(nu + 1):
        H = np.zeros((n - k, n), dtype=object)
        for r in range(n - k):
            for c in range(n):
                idx = i * n + k + r - c
                H[r, c] = math.comb(top, idx) if 0 <= idx <= top else 0
        out.append(H)
    return out


def complete_mdp_binomial(n: int, k: int, delta: int, p: int | None = None):
    """Binomial parity-check code; returns (code, characteristic bound)."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if delta % (n - k):
        raise ValueError("need (n-k) | delta")
    bound = complete_mdp_bound(n, k, delta)
    if p is None:
        p = int(math.floor(bound)) + 1
        while not is_prime(p):
            p += 1
        if p > MAX_FIELD_SIZE:
            raise ValueError(f"smallest guaranteed prime exceeds {MAX_FIELD_SIZE}; pass p explicitly")
    F = field_create(p)
    blocks = [np.array(H % p, dtype=np.int64) for H in binomial_parity_blocks(n, k, delta)]
    code = ConvolutionalCode.from_parity_check(_matrix_poly(F, blocks))
    rec = ConstructionRecipe("complete-binomial", {"n": n, "k": k, "delta": delta, "p": p},
                             guaranteed=p > bound)
    return _tag(code, rec), bound


def complete_mdp_alpha(n: int, k: int, delta: int, p: int, N: int) -> ConvolutionalCode:
    """Parity-check blocks H_i[r][c] = alpha^(2^(i n + r + c)), i = 0..nu."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if delta % (n - k):
        raise ValueError("need (n-k) | delta")
    F = field_create(p, N)
    nu = delta // (n - k)
    L = delta // k + delta // (n - k)
    blocks = [np.array([[_pow2_alpha(F, i * n + r + c) for c in range(n)] for r in range(n - k)],
                       dtype=np.int64) for i in range(nu + 1)]
    code = ConvolutionalCode.from_parity_check(_matrix_poly(F, blocks))
    rec = ConstructionRecipe("complete-alpha", {"n": n, "k": k, "delta": delta, "p": p, "N": N},
                             guaranteed=N > (L + 1) * 2 ** ((nu + 2) * n - k - 1))
    return _tag(code, rec)
