"""Tabulated state-transition graph of an ISO representation."""

from __future__ import annotations

import os

import numpy as np

from .minors import BudgetExceeded
from .sysrep import IsoRep

TRELLIS_BUDGET = int(os.environ.get("CONVCODES_TRELLIS_BUDGET", 2**22))


def all_vectors(q: int, length: int) -> np.ndarray:
    """Every vector of F^length, row i holding the base-q digits of i (least significant first)."""
    idx = np.arange(q**length, dtype=np.int64)
    out = np.zeros((q**length, length), dtype=np.int64)
    for d in range(length):
        out[:, d] = idx % q
        idx //= q
    return out


def vector_index(q: int, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    pw = q ** np.arange(v.shape[-1], dtype=np.int64)
    return (v * pw).sum(axis=-1)


class Trellis:
    """Transitions ``next_state[x, u]`` and symbols ``outputs[x, u]`` for every state and input.

    States and inputs are indexed by their base-q digit encodings, so index 0
    is the zero state / zero input.
    """

    def __init__(self, sys: IsoRep, budget: int | None = None):
        F = sys.field
        q = F.q
        budget = TRELLIS_BUDGET if budget is None else budget
        self.num_states = q**sys.s
        self.num_inputs = q**sys.k
        if self.num_states * self.num_inputs > budget:
            raise BudgetExceeded(f"trellis with {self.num_states} states x {self.num_inputs} inputs "
                              f"exceeds the budget {budget}")
        self.sys = sys
        X = all_vectors(q, sys.s)
        U = all_vectors(q, sys.k)
        self.states = X
        self.inputs = U
        if sys.s:
            XA = F.matmul(X, sys.A)
            UB = F.matmul(U, sys.B)
            nxt = F.add(XA[:, None, :], UB[None, :, :])
            self.next_state = vector_index(q, nxt)
            XC = F.matmul(X, sys.C)
        else:
            self.next_state = np.zeros((1, self.num_inputs), dtype=np.int64)
            XC = np.zeros((1, sys.n - sys.k), dtype=np.int64)
        UD = F.matmul(U, sys.D)
        y = F.add(XC[:, None, :], UD[None, :, :])
        u = np.broadcast_to(U[None, :, :], (self.num_states,) + U.shape)
        self.outputs = np.concatenate([y, u], axis=-1)
        self.weights = np.count_nonzero(self.outputs, axis=-1).astype(np.int64)
