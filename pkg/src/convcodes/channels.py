"""Seedable erasure and q-ary symmetric channels.

Randomness comes from numpy's PCG64 bit generator, seeded with the given
integer, so a fixed seed reproduces a stream bit for bit.  Draw order is part
of the contract: the erasure channel draws one uniform float per symbol in
row-major order; the symmetric channel draws the flip floats first, then one
integer in ``[0, q-2]`` per symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .galois import GF

ERASED = -1
DEFAULT_SEED = 20120101


def make_rng(seed: int | None) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(DEFAULT_SEED if seed is None else seed))


@dataclass
class ErasureStream:
    """Received symbols with ``ERASED`` at lost positions.

    ``sent`` keeps the transmitted values (when known) for scoring.
    """

    values: np.ndarray
    sent: np.ndarray | None = None

    def __post_init__(self):
        self.values = np.atleast_2d(np.asarray(self.values, dtype=np.int64))

    @property
    def n(self) -> int:
        return self.values.shape[1]

    @property
    def steps(self) -> int:
        return self.values.shape[0]

    @property
    def mask(self) -> np.ndarray:
        return self.values == ERASED

    @property
    def erasures(self) -> set[tuple[int, int]]:
        return {(int(t), int(i)) for t, i in zip(*np.nonzero(self.mask))}

    def count(self) -> int:
        return int(self.mask.sum())


def as_stream(s) -> np.ndarray:
    s = np.asarray(s, dtype=np.int64)
    if s.ndim != 2:
        raise ValueError("a symbol stream is a (steps, n) array")
    return s


def erase_channel(s, *, rate: float | None = None, pattern=None, burst=None,
                  seed: int | None = None) -> ErasureStream:
    """Erase symbols i.i.d. with probability ``rate``, at explicit ``(t, pos)``
    pairs, or in a ``burst=(start_step, length)`` covering whole steps.

    Several modes may be combined; their erasure sets are united.
    """
    s = as_stream(s)
    T, n = s.shape
    mask = np.zeros((T, n), dtype=bool)
    if rate is not None:
        if not 0.0 <= rate <= 1.0:
            raise ValueError("erasure rate must lie in [0, 1]")
        mask |= make_rng(seed).random((T, n)) < rate
    if pattern is not None:
        for t, i in pattern:
            if not (0 <= t < T and 0 <= i < n):
                raise ValueError(f"erasure position {(t, i)} is outside the {T}x{n} stream")
            mask[t, i] = True
    if burst is not None:
        start, length = burst
        if start < 0 or length < 0 or start + length > T:
            raise ValueError(f"burst {burst} does not fit in {T} steps")
        mask[start:start + length] = True
    out = s.copy()
    out[mask] = ERASED
    return ErasureStream(out, s.copy())


def qsc_channel(F: GF, s, eps: float, seed: int | None = None) -> np.ndarray:
    """Replace each symbol with probability ``eps`` by a uniformly chosen different element."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError("error probability must lie in [0, 1]")
    s = as_stream(s)
    rng = make_rng(seed)
    flip = rng.random(s.shape) < eps
    if F.q == 1:  # pragma: no cover
        return s.copy()
    r = rng.integers(0, F.q - 1, size=s.shape)
    other = np.where(r < s, r, r + 1)
    return np.where(flip, other, s)
