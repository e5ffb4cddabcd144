"""Enumeration of square minors over a finite field.

Every enumeration checks its size against a budget up front and raises
:class:`BudgetExceeded` instead of silently truncating.
"""

from __future__ import annotations

import os
from itertools import combinations
from math import comb

import numpy as np

from .galois import GF
from .linalg import batch_det
from .verdict import Verdict

DEFAULT_MINOR_BUDGET = int(os.environ.get("CONVCODES_MINOR_BUDGET", 2**20))
_BATCH = 4096


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured budget."""


def _check_budget(count: int, budget: int | None, what: str):
    budget = DEFAULT_MINOR_BUDGET if budget is None else budget
    if count > budget:
        raise BudgetExceeded(f"{what}: {count} cases exceed the budget of {budget}")


def has_perfect_matching(mask: np.ndarray) -> bool:
    """True iff the boolean square pattern admits a permutation through nonzero cells."""
    m = mask.shape[0]
    match_col = [-1] * mask.shape[1]

    def augment(r, seen):
        for c in np.nonzero(mask[r])[0]:
            if seen[c]:
                continue
            seen[c] = True
            if match_col[c] < 0 or augment(match_col[c], seen):
                match_col[c] = r
                return True
        return False

    return all(augment(r, [False] * mask.shape[1]) for r in range(m))


def _first_zero(F: GF, M: np.ndarray, rows_list, cols_list):
    """Index of the first singular minor among (rows, cols) pairs, or None."""
    size = len(rows_list[0]) if rows_list else 0
    for start in range(0, len(rows_list), _BATCH):
        r = np.array(rows_list[start:start + _BATCH], dtype=np.int64).reshape(-1, size)
        c = np.array(cols_list[start:start + _BATCH], dtype=np.int64).reshape(-1, size)
        sub = M[r[:, :, None], c[:, None, :]]
        dets = batch_det(F, sub)
        bad = np.nonzero(dets == 0)[0]
        if bad.size:
            return start + int(bad[0])
    return None


def not_trivially_zero_minors_nonzero(F: GF, M, mask=None, budget: int | None = None) -> Verdict:
    """Every square minor whose support pattern admits a transversal is nonzero.

    ``mask`` marks the structurally nonzero cells; by default the literal
    nonzero entries of M.  The witness of a failure is ``(rows, cols)``.
    """
    M = np.asarray(M, dtype=np.int64)
    mask = (M != 0) if mask is None else np.asarray(mask, dtype=bool)
    m, n = M.shape
    total = sum(comb(m, s) * comb(n, s) for s in range(1, min(m, n) + 1))
    _check_budget(total, budget, "minor enumeration")
    for size in range(1, min(m, n) + 1):
        rows_list, cols_list = [], []
        for r in combinations(range(m), size):
            sub_mask = mask[list(r)]
            for c in combinations(range(n), size):
                if has_perfect_matching(sub_mask[:, list(c)]):
                    rows_list.append(r)
                    cols_list.append(c)
        if not rows_list:
            continue
        bad = _first_zero(F, M, rows_list, cols_list)
        if bad is not None:
            return Verdict(False, witness=(rows_list[bad], cols_list[bad]),
                           detail=f"singular {size}x{size} minor")
    return Verdict(True)


def bounded_column_sets(ncols: int, size: int, lo=None, hi=None):
    """Increasing index tuples (0-based) with lo[p] <= j_p <= hi[p] for each position p."""
    lo = [0] * size if lo is None else lo
    hi = [ncols - 1] * size if hi is None else hi

    def rec(p, start, prefix):
        if p == size:
            yield tuple(prefix)
            return
        first = max(start, lo[p])
        last = min(hi[p], ncols - (size - p))
        for j in range(first, last + 1):
            prefix.append(j)
            yield from rec(p + 1, j + 1, prefix)
            prefix.pop()

    return rec(0, 0, [])


def count_bounded_column_sets(ncols: int, size: int, lo=None, hi=None) -> int:
    lo = [0] * size if lo is None else lo
    hi = [ncols - 1] * size if hi is None else hi
    # ways[j] = number of valid prefixes of the current length ending at column j
    ways = np.zeros(ncols + 1, dtype=object)
    for j in range(ncols):
        ways[j] = 1 if lo[0] <= j <= hi[0] else 0
    for p in range(1, size):
        new = np.zeros(ncols + 1, dtype=object)
        acc = 0
        for j in range(ncols):
            if lo[p] <= j <= hi[p]:
                new[j] = acc
            acc += ways[j]
        ways = new
    return int(sum(ways[:ncols]))


def full_size_column_minors(F: GF, M, lo=None, hi=None, budget: int | None = None) -> Verdict:
    """All full-size minors on admissible column sets are nonzero (witness: the column set)."""
    M = np.asarray(M, dtype=np.int64)
    m, n = M.shape
    count = count_bounded_column_sets(n, m, lo, hi)
    _check_budget(count, budget, "full-size minor enumeration")
    rows = tuple(range(m))
    cols_list = []
    for cols in bounded_column_sets(n, m, lo, hi):
        cols_list.append(cols)
        if len(cols_list) == _BATCH:
            bad = _first_zero(F, M, [rows] * len(cols_list), cols_list)
            if bad is not None:
                return Verdict(False, witness=cols_list[bad], detail="singular admissible minor")
            cols_list = []
    if cols_list:
        bad = _first_zero(F, M, [rows] * len(cols_list), cols_list)
        if bad is not None:
            return Verdict(False, witness=cols_list[bad], detail="singular admissible minor")
    return Verdict(True, detail=f"{count} admissible minors checked")
