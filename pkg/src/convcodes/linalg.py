"""Gaussian elimination over a finite field for constant matrices."""

from __future__ import annotations

import numpy as np

from .galois import GF


def rref(F: GF, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.mul(R[r], F.inv(R[r, c]))
        factors = R[:, c].copy()
        factors[r] = 0
        mask = factors != 0
        if mask.any():
            R[mask] = F.sub(R[mask], F.mul(factors[mask, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: GF, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: GF, M) -> np.ndarray:
    """Basis (as rows) of the right nullspace {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    rows, cols = M.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = F.neg(R[r, f])
    return basis


def left_nullspace(F: GF, M) -> np.ndarray:
    """Basis (as rows) of {y : y M = 0}."""
    return nullspace(F, np.asarray(M, dtype=np.int64).T)


def solve(F: GF, A, b):
    """One solution of ``A x = b`` plus a nullspace basis, or ``None``.

    Returns ``(x, N)`` where every solution is ``x + t N``.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = A.shape
    if rows == 0:
        return np.zeros(cols, dtype=np.int64), np.eye(cols, dtype=np.int64)
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, pivots = rref(F, aug)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = R[r, cols]
    free = [c for c in range(cols) if c not in pivots]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        N[i, f] = 1
        for r, pc in enumerate(pivots):
            N[i, pc] = F.neg(R[r, f])
    return x, N


def det(F: GF, M) -> int:
    A = np.array(M, dtype=np.int64, copy=True)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    result = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
            result = int(F.neg(result))
        pv = int(A[c, c])
        result = int(F.mul(result, pv))
        idx = c + 1 + np.nonzero(A[c + 1:, c])[0]
        if idx.size:
            f = F.div(A[idx, c], pv)
            A[idx] = F.sub(A[idx], F.mul(f[:, None], A[c][None, :]))
    return result


def inv(F: GF, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, pivots = rref(F, np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1))
    if pivots[:n] != list(range(n)):
        raise np.linalg.LinAlgError("singular matrix over the field")
    return R[:, n:]


def complete_basis(F: GF, rows) -> np.ndarray:
    """Extend independent row vectors to a basis of F^s (returned as rows, given rows first)."""
    rows = np.asarray(rows, dtype=np.int64)
    s = rows.shape[1]
    basis = [r for r in rows]
    for i in range(s):
        e = np.zeros(s, dtype=np.int64)
        e[i] = 1
        cand = np.array(basis + [e])
        if rank(F, cand) == len(cand):
            basis.append(e)
        if len(basis) == s:
            break
    return np.array(basis, dtype=np.int64).reshape(-1, s)


def batch_det(F: GF, A) -> np.ndarray:
    """Determinants of a stack of square matrices, shape (B, m, m) -> (B,)."""
    A = np.array(A, dtype=np.int64, copy=True)
    nb, m, _ = A.shape
    result = np.ones(nb, dtype=np.int64)
    alive = np.ones(nb, dtype=bool)
    ar = np.arange(nb)
    for c in range(m):
        nz = A[:, c:, c] != 0
        alive &= nz.any(axis=1)
        piv = c + np.argmax(nz, axis=1)
        swap = piv != c
        if swap.any():
            rc = A[ar, c].copy()
            A[ar, c] = A[ar, piv]
            A[ar, piv] = rc
            result = np.where(swap, F.neg(result), result)
        pv = A[:, c, c]
        pv = np.where(pv == 0, 1, pv)
        result = F.mul(result, pv)
        if c + 1 < m:
            f = F.div(A[:, c + 1:, c], pv[:, None])
            A[:, c + 1:, :] = F.sub(A[:, c + 1:, :], F.mul(f[:, :, None], A[:, c, None, :]))
    return np.where(alive, result, 0)
