"""Canonical forms and structural tests for polynomial matrices.

All eliminations work on lists of :class:`Poly` rows and record every
elementary operation in a companion unimodular matrix, so each routine can
return the transform that produced its output.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import linalg
from .poly import DEG_ZERO, Poly, PolyMatrix, poly_det, poly_gcd

# -- list-of-rows helpers


def _lists(M: PolyMatrix) -> list[list[Poly]]:
    return M.entries()


def _eye(F, n) -> list[list[Poly]]:
    return [[Poly.one(F) if i == j else Poly.zero(F) for j in range(n)] for i in range(n)]


def _axpy(a: list[Poly], q: Poly, b: list[Poly]) -> list[Poly]:
    """a - q*b entrywise."""
    if q.is_zero():
        return a
    return [x - q * y for x, y in zip(a, b)]


def _scale(a: list[Poly], c: int) -> list[Poly]:
    return [x.scale(c) for x in a]


def _col_axpy(A, j: int, q: Poly, t: int):
    """column j -= q * column t, in place."""
    if q.is_zero():
        return
    for row in A:
        row[j] = row[j] - q * row[t]


def _swap_cols(A, i: int, j: int):
    for row in A:
        row[i], row[j] = row[j], row[i]


def _matrix(F, rows, ncols=None) -> PolyMatrix:
    if not rows:
        return PolyMatrix.zeros(F, 0, ncols or 0)
    return PolyMatrix.from_entries(F, rows)


# -- echelon core


def _echelon(F, A: list[list[Poly]], U: list[list[Poly]]) -> list[int]:
    """Bring A to reduced row echelon form over F[z] in place; return pivot columns.

    Pivots are monic and entries above a pivot have lower degree than it.
    The same row operations are applied to U.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        if not any(A[i][c] for i in range(r, m)):
            continue
        while True:
            i0 = min((i for i in range(r, m) if A[i][c]), key=lambda i: (A[i][c].degree, i))
            if i0 != r:
                A[r], A[i0] = A[i0], A[r]
                U[r], U[i0] = U[i0], U[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = _axpy(A[i], q, A[r])
                    U[i] = _axpy(U[i], q, U[r])
                    if A[i][c]:
                        clean = False
            if clean:
                break
        inv = int(F.inv(A[r][c].lc()))
        A[r] = _scale(A[r], inv)
        U[r] = _scale(U[r], inv)
        for i in range(r):
            if A[i][c]:
                q = A[i][c] // A[r][c]
                A[i] = _axpy(A[i], q, A[r])
                U[i] = _axpy(U[i], q, U[r])
        pivots.append(c)
        r += 1
    return pivots


def echelon_form(M: PolyMatrix):
    """Return ``(H, U, pivots)`` with ``H = U @ M`` in reduced row echelon form."""
    F = M.field
    A = _lists(M)
    U = _eye(F, M.rows)
    pivots = _echelon(F, A, U)
    return _matrix(F, A, M.cols), _matrix(F, U, M.rows), pivots


def poly_rank(M: PolyMatrix) -> int:
    """Rank over the rational function field F(z)."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(echelon_form(M)[2])


def _require_full_row_rank(M: PolyMatrix):
    if poly_rank(M) != M.rows:
        raise ValueError("matrix does not have full row rank")


def hermite_form(M: PolyMatrix, side: str = "column"):
    """Hermite form and its unimodular transform.

    ``side="column"`` returns ``(H, U)`` with ``H = U @ M`` in echelon form.
    ``side="row"`` returns ``(H, W)`` with ``H = M @ W = [Delta 0]`` and Delta
    lower triangular.
    """
    _require_full_row_rank(M)
    if side == "column":
        H, U, _ = echelon_form(M)
        return H, U
    if side == "row":
        Ht, Ut, _ = echelon_form(M.T)
        return Ht.T, Ut.T
    raise ValueError(f"side must be 'column' or 'row', got {side!r}")


# -- Smith form


def _smith_ascending(F, A, U, V):
    k = len(A)
    n = len(A[0]) if k else 0
    for t in range(min(k, n)):
        while True:
            best = None
            for i in range(t, k):
                for j in range(t, n):
                    e = A[i][j]
                    if e and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                return
            _, i0, j0 = best
            if i0 != t:
                A[t], A[i0] = A[i0], A[t]
                U[t], U[i0] = U[i0], U[t]
            if j0 != t:
                _swap_cols(A, t, j0)
                _swap_cols(V, t, j0)
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, k):
                if A[i][t]:
                    q = A[i][t] // piv
                    A[i] = _axpy(A[i], q, A[t])
                    U[i] = _axpy(U[i], q, U[t])
                    dirty |= bool(A[i][t])
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // piv
                    _col_axpy(A, j, q, t)
                    _col_axpy(V, j, q, t)
                    dirty |= bool(A[t][j])
            if dirty:
                continue
            bad = next((i for i in range(t + 1, k) for j in range(t + 1, n)
                        if A[i][j] % piv), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
        inv = int(F.inv(A[t][t].lc()))
        A[t] = _scale(A[t], inv)
        U[t] = _scale(U[t], inv)


def smith_form(M: PolyMatrix, order: str = "descending"):
    """Return ``(S, U, V)`` with ``S = U @ M @ V`` diagonal and monic.

    With ``order="descending"`` each invariant polynomial is divisible by the
    next one; ``order="ascending"`` gives the usual chain gamma_i | gamma_{i+1}.
    Zero invariants (rank deficiency) sit at the divisible end of the chain.
    """
    if order not in ("ascending", "descending"):
        raise ValueError(f"unknown order {order!r}")
    F = M.field
    A = _lists(M)
    U = _eye(F, M.rows)
    V = _eye(F, M.cols)
    _smith_ascending(F, A, U, V)
    if order == "descending":
        d = min(M.rows, M.cols)
        perm = list(range(d - 1, -1, -1))
        A = [A[i] for i in perm] + A[d:]
        U = [U[i] for i in perm] + U[d:]
        for mat in (A, V):
            for row in mat:
                row[:d] = [row[j] for j in perm]
    return _matrix(F, A, M.cols), _matrix(F, U, M.rows), _matrix(F, V, M.cols)


def smith_diagonal(S: PolyMatrix) -> list[Poly]:
    return [S[i, i] for i in range(min(S.shape))]


def invariant_polynomials(M: PolyMatrix) -> list[Poly]:
    """Invariant polynomials in ascending divisibility order, from determinantal divisors.

    Exponential in the matrix size; meant for small matrices and as a check
    on :func:`smith_form`.
    """
    F = M.field
    prev = Poly.one(F)
    out = []
    for i in range(1, min(M.shape) + 1):
        g = Poly.zero(F)
        for _, d in M.minors(i):
            g = poly_gcd(g, d)
        if g.is_zero():
            out.extend([Poly.zero(F)] * (min(M.shape) - i + 1))
            break
        out.append(g // prev)
        prev = g
    return out


# -- degrees and row reduction


def row_degrees_hrc(M: PolyMatrix):
    return M.row_degrees(), M.hrc()


def external_degree(M: PolyMatrix):
    degs = M.row_degrees()
    if any(d == DEG_ZERO for d in degs):
        return DEG_ZERO
    return int(sum(degs))


def full_size_minors(M: PolyMatrix) -> list[tuple[tuple[int, ...], Poly]]:
    """All k x k minors of a k x n matrix, keyed by column set in lexicographic order."""
    k = M.rows
    if k > M.cols:
        raise ValueError("more rows than columns")
    E = _lists(M)
    out = []
    for cols in combinations(range(M.cols), k):
        out.append((cols, poly_det([[row[j] for j in cols] for row in E], M.field)))
    return out


def internal_degree(M: PolyMatrix):
    return max((d.degree for _, d in full_size_minors(M)), default=DEG_ZERO)


def is_row_reduced(M: PolyMatrix) -> bool:
    degs, hrc = row_degrees_hrc(M)
    if any(d == DEG_ZERO for d in degs):
        return False
    return linalg.rank(M.field, hrc) == M.rows


def row_reduce(M: PolyMatrix):
    """Return ``(R, U)`` with ``R = U @ M`` row reduced and U unimodular."""
    _require_full_row_rank(M)
    F = M.field
    A = _lists(M)
    U = _eye(F, M.rows)
    while True:
        cur = _matrix(F, A, M.cols)
        degs, hrc = cur.row_degrees(), cur.hrc()
        null = linalg.left_nullspace(F, hrc)
        if null.shape[0] == 0:
            break
        a = null[0]
        support = [i for i in range(M.rows) if a[i]]
        r = max(support, key=lambda i: (degs[i], -i))
        newA = [Poly.zero(F)] * M.cols
        newU = [Poly.zero(F)] * M.rows
        for i in support:
            f = Poly.monomial(F, int(degs[r] - degs[i]), int(a[i]))
            newA = [x + f * y for x, y in zip(newA, A[i])]
            newU = [x + f * y for x, y in zip(newU, U[i])]
        A[r], U[r] = newA, newU
    return _matrix(F, A, M.cols), _matrix(F, U, M.rows)


# -- unimodularity and primeness


def is_unimodular(M: PolyMatrix) -> bool:
    if M.rows != M.cols:
        raise ValueError("unimodularity requires a square matrix")
    return M.det().degree == 0


def unimodular_inverse(M: PolyMatrix) -> PolyMatrix:
    if M.rows != M.cols:
        raise ValueError("inverse of a non-square matrix")
    H, U, _ = echelon_form(M)
    if H != PolyMatrix.identity(M.field, M.rows):
        raise ValueError("matrix is not unimodular")
    return U


def is_left_prime(M: PolyMatrix) -> bool:
    """True iff M has a polynomial right inverse (Smith form [I 0])."""
    if M.rows > M.cols or poly_rank(M) != M.rows:
        return False
    H, _ = hermite_form(M, side="row")
    return all(H[i, i].degree == 0 for i in range(M.rows))


def right_inverse(M: PolyMatrix) -> PolyMatrix:
    """Polynomial P with ``M @ P = I`` built from the Smith decomposition."""
    if not is_left_prime(M):
        raise ValueError("matrix is not left prime")
    _, U, V = smith_form(M)
    return V[:, list(range(M.rows))] @ U


def complete_to_unimodular(M: PolyMatrix) -> PolyMatrix:
    """Rows L such that the stacked matrix [M; L] is unimodular."""
    if not is_left_prime(M):
        raise ValueError("matrix is not left prime")
    if M.rows == M.cols:
        return PolyMatrix.zeros(M.field, 0, M.cols)
    _, _, V = smith_form(M)
    Vinv = unimodular_inverse(V)
    return Vinv[list(range(M.rows, M.cols)), :]


def left_kernel(M: PolyMatrix) -> PolyMatrix:
    """Polynomial basis (rows) of ``{x : x @ M = 0}``; the basis is left prime."""
    H, U, pivots = echelon_form(M)
    r = len(pivots)
    return U[list(range(r, M.rows)), :]


def left_prime_factor(M: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix]:
    """Factor a full-row-rank M as ``Delta @ M0`` with M0 left prime."""
    H, W = hermite_form(M, side="row")
    k = M.rows
    Winv = unimodular_inverse(W)
    Delta = H[:, list(range(k))]
    return Delta, Winv[list(range(k)), :]


def constant_ratio(a: list[Poly], b: list[Poly]):
    """The constant c with a = c*b entrywise, or None if none exists."""
    F = None
    c = None
    for x, y in zip(a, b):
        F = x.field
        if x.is_zero() != y.is_zero():
            return None
        if x.is_zero():
            continue
        if x.degree != y.degree:
            return None
        ratio = int(F.div(x.lc(), y.lc()))
        if c is None:
            c = ratio
        elif c != ratio:
            return None
        if x != y.scale(ratio):
            return None
    return 1 if c is None else c


def as_constant_matrix(M: PolyMatrix) -> np.ndarray:
    if M.degree not in (0, DEG_ZERO):
        raise ValueError("matrix is not constant")
    return M.coefficient(0)
