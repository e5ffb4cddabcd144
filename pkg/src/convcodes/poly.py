"""Polynomials and polynomial matrices over F_q[z].

A :class:`PolyMatrix` stores its coefficients as an integer array of shape
``(rows, cols, deg + 1)`` so that ``M.coeffs[:, :, i]`` is the constant
matrix multiplying ``z**i``.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .galois import GF, FieldElement

#: Degree of the zero polynomial.
DEG_ZERO = -math.inf


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        return c[:0]
    return c[: nz[-1] + 1]


def _as_value(field: GF, x) -> int:
    if isinstance(x, FieldElement):
        if x.field != field:
            raise ValueError("cannot mix elements of different fields")
        return x.value
    if field.N == 1:
        return int(x) % field.p
    x = int(x)
    if not 0 <= x < field.q:
        raise ValueError(f"{x} is not an element of {field}")
    return x


class Poly:
    """Polynomial with coefficients in ascending order, trailing zeros stripped."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs=()):
        if isinstance(coeffs, Poly):
            coeffs = coeffs.coeffs
        if isinstance(coeffs, np.ndarray):
            c = np.asarray(coeffs, dtype=np.int64).reshape(-1)
            c = c % field.p if field.N == 1 else field.validate(c).copy()
        else:
            if isinstance(coeffs, (int, np.integer, FieldElement)):
                coeffs = [coeffs]
            c = np.array([_as_value(field, x) for x in coeffs], dtype=np.int64)
        self.field = field
        self.coeffs = _trim(c)
        self.coeffs.setflags(write=False)

    @classmethod
    def zero(cls, field):
        return cls(field, np.zeros(0, dtype=np.int64))

    @classmethod
    def one(cls, field):
        return cls(field, np.ones(1, dtype=np.int64))

    @classmethod
    def monomial(cls, field, degree: int, coeff=1):
        c = np.zeros(degree + 1, dtype=np.int64)
        c[degree] = _as_value(field, coeff)
        return cls(field, c)

    @classmethod
    def from_roots(cls, field, roots):
        out = cls.one(field)
        for r in roots:
            out = out * cls(field, np.array([int(field.neg(r)), 1]))
        return out

    @property
    def degree(self):
        return len(self.coeffs) - 1 if len(self.coeffs) else DEG_ZERO

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __bool__(self):
        return not self.is_zero()

    def lc(self) -> int:
        return int(self.coeffs[-1]) if len(self.coeffs) else 0

    def coeff(self, i: int) -> int:
        return int(self.coeffs[i]) if 0 <= i < len(self.coeffs) else 0

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("cannot mix polynomials over different fields")
            return other
        if isinstance(other, (int, np.integer, FieldElement)):
            return Poly(self.field, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        m = max(len(a), len(b))
        out = np.zeros(m, dtype=np.int64)
        out[: len(a)] = a
        out[: len(b)] = self.field.add(out[: len(b)], b)
        return Poly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, self.field.neg(self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly(self.field, polymul(self.field, self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = self.coeffs.copy()
        db = len(o.coeffs) - 1
        if len(rem) - 1 < db:
            return Poly.zero(F), self
        quot = np.zeros(len(rem) - db, dtype=np.int64)
        inv_lc = int(F.inv(o.lc()))
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = int(F.mul(c, inv_lc))
            quot[i - db] = f
            rem[i - db: i + 1] = F.sub(rem[i - db: i + 1], F.mul(f, o.coeffs))
        return Poly(F, quot), Poly(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Poly) else other
        if o is NotImplemented:
            return NotImplemented
        return self.field == o.field and np.array_equal(self.coeffs, o.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs.tobytes()))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return Poly(self.field, self.field.mul(self.coeffs, self.field.inv(self.lc())))

    def scale(self, c) -> "Poly":
        return Poly(self.field, self.field.mul(self.coeffs, _as_value(self.field, c)))

    def shift(self, k: int) -> "Poly":
        """Multiply by z**k."""
        if self.is_zero():
            return self
        return Poly(self.field, np.concatenate([np.zeros(k, dtype=np.int64), self.coeffs]))

    def reversed(self, d: int) -> "Poly":
        """z**d * p(1/z); requires d >= degree."""
        if self.is_zero():
            return self
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        c = np.zeros(d + 1, dtype=np.int64)
        c[: len(self.coeffs)] = self.coeffs
        return Poly(self.field, c[::-1])

    def scale_argument(self, c) -> "Poly":
        """p(c z)."""
        c = _as_value(self.field, c)
        pw = np.array([int(self.field.pow(c, i)) for i in range(len(self.coeffs))],
                      dtype=np.int64)
        return Poly(self.field, self.field.mul(self.coeffs, pw))

    def __call__(self, x):
        acc = 0
        for c in self.coeffs[::-1]:
            acc = int(self.field.add(self.field.mul(acc, _as_value(self.field, x)), c))
        return FieldElement(self.field, acc)

    def weight(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if i == 0:
                terms.append(str(int(c)))
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(f"{int(c)}{mon}")
        return " + ".join(terms)


def polymul(F: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    if F.N == 1 and F.p < 2**20 and min(len(a), len(b)) < 2**20:
        return np.convolve(a, b) % F.p
    if len(a) < len(b):
        a, b = b, a
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, bi in enumerate(b):
        if bi:
            out[i: i + len(a)] = F.add(out[i: i + len(a)], F.mul(a, bi))
    return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class PolyMatrix:
    """Matrix with entries in F_q[z]."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs):
        c = np.asarray(coeffs, dtype=np.int64)
        if c.ndim == 2:
            c = c[:, :, None]
        if c.ndim != 3:
            raise ValueError("coefficient array must have shape (rows, cols, degree+1)")
        if c.shape[2] == 0:
            c = np.zeros(c.shape[:2] + (1,), dtype=np.int64)
        nz = np.nonzero(c.reshape(-1, c.shape[2]).any(axis=0))[0]
        top = int(nz[-1]) + 1 if nz.size else 1
        c = np.ascontiguousarray(c[:, :, :top])
        c.setflags(write=False)
        self.field = field
        self.coeffs = c

    # -- constructors

    @classmethod
    def from_entries(cls, field: GF, entries) -> "PolyMatrix":
        rows = [[e if isinstance(e, Poly) else Poly(field, e) for e in row] for row in entries]
        if not rows:
            return cls(field, np.zeros((0, 0, 1), dtype=np.int64))
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        deg = max([len(e.coeffs) for r in rows for e in r] + [1])
        c = np.zeros((len(rows), ncols, deg), dtype=np.int64)
        for i, r in enumerate(rows):
            for j, e in enumerate(r):
                if e.field != field:
                    raise ValueError("entry over a different field")
                c[i, j, : len(e.coeffs)] = e.coeffs
        return cls(field, c)

    @classmethod
    def from_coefficients(cls, field: GF, mats) -> "PolyMatrix":
        """Build sum_i mats[i] z^i."""
        mats = [np.asarray(m, dtype=np.int64) for m in mats]
        return cls(field, np.stack(mats, axis=2))

    @classmethod
    def constant(cls, field: GF, M) -> "PolyMatrix":
        return cls(field, np.asarray(M, dtype=np.int64)[:, :, None])

    @classmethod
    def identity(cls, field: GF, n: int) -> "PolyMatrix":
        return cls.constant(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "PolyMatrix":
        return cls(field, np.zeros((rows, cols, 1), dtype=np.int64))

    # -- shape and access

    @property
    def shape(self):
        return self.coeffs.shape[:2]

    @property
    def rows(self) -> int:
        return self.coeffs.shape[0]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[1]

    @property
    def degree(self):
        if not self.coeffs.any():
            return DEG_ZERO
        return self.coeffs.shape[2] - 1

    def coefficient(self, i: int) -> np.ndarray:
        """Constant matrix multiplying z**i (zero outside the stored range)."""
        if 0 <= i < self.coeffs.shape[2]:
            return self.coeffs[:, :, i].copy()
        return np.zeros(self.shape, dtype=np.int64)

    def coefficient_list(self, length: int | None = None) -> list[np.ndarray]:
        length = self.coeffs.shape[2] if length is None else length
        return [self.coefficient(i) for i in range(length)]

    def __getitem__(self, key):
        if isinstance(key, tuple) and len(key) == 2 and all(
                isinstance(k, (int, np.integer)) for k in key):
            return Poly(self.field, self.coeffs[key[0], key[1]])
        if not isinstance(key, tuple):
            key = (key, slice(None))
        r, c = key
        if isinstance(r, (int, np.integer)):
            r = [r]
        if isinstance(c, (int, np.integer)):
            c = [c]
        sub = self.coeffs[r][:, c] if not isinstance(r, slice) or not isinstance(c, slice) \
            else self.coeffs[r, c]
        return PolyMatrix(self.field, sub)

    def entries(self) -> list[list[Poly]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def row(self, i: int) -> list[Poly]:
        return [self[i, j] for j in range(self.cols)]

    @property
    def T(self) -> "PolyMatrix":
        return PolyMatrix(self.field, self.coeffs.transpose(1, 0, 2))

    # -- arithmetic

    def _check(self, other: "PolyMatrix"):
        if not isinstance(other, PolyMatrix):
            raise TypeError("expected a PolyMatrix")
        if other.field != self.field:
            raise ValueError("cannot mix matrices over different fields")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        d = max(self.coeffs.shape[2], other.coeffs.shape[2])
        a = np.zeros(self.shape + (d,), dtype=np.int64)
        a[:, :, : self.coeffs.shape[2]] = self.coeffs
        a[:, :, : other.coeffs.shape[2]] = self.field.add(
            a[:, :, : other.coeffs.shape[2]], other.coeffs)
        return PolyMatrix(self.field, a)

    def __neg__(self):
        return PolyMatrix(self.field, self.field.neg(self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        da, db = self.coeffs.shape[2], other.coeffs.shape[2]
        out = np.zeros((self.rows, other.cols, da + db - 1), dtype=np.int64)
        for i in range(da):
            Ai = self.coeffs[:, :, i]
            if not Ai.any():
                continue
            for j in range(db):
                Bj = other.coeffs[:, :, j]
                if Bj.any():
                    out[:, :, i + j] = F.add(out[:, :, i + j], F.matmul(Ai, Bj))
        return PolyMatrix(F, out)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix(self.field, self.field.mul(self.coeffs, _as_value(self.field, c)))

    def shift(self, k: int) -> "PolyMatrix":
        pad = np.zeros(self.shape + (k,), dtype=np.int64)
        return PolyMatrix(self.field, np.concatenate([pad, self.coeffs], axis=2))

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.field, self.shape, self.coeffs.tobytes()))

    def evaluate(self, x) -> np.ndarray:
        F = self.field
        x = _as_value(F, x)
        acc = np.zeros(self.shape, dtype=np.int64)
        for i in range(self.coeffs.shape[2] - 1, -1, -1):
            acc = F.add(F.mul(acc, x), self.coeffs[:, :, i])
        return acc

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    # -- degrees

    def row_degrees(self) -> list:
        out = []
        for i in range(self.rows):
            nz = np.nonzero(self.coeffs[i].any(axis=0))[0]
            out.append(int(nz[-1]) if nz.size else DEG_ZERO)
        return out

    def col_degrees(self) -> list:
        return self.T.row_degrees()

    def hrc(self) -> np.ndarray:
        """Highest-row-degree coefficient matrix (zero rows stay zero)."""
        out = np.zeros(self.shape, dtype=np.int64)
        for i, d in enumerate(self.row_degrees()):
            if d != DEG_ZERO:
                out[i] = self.coeffs[i, :, d]
        return out

    def row_reverse(self) -> "PolyMatrix":
        """Entrywise z**nu_i g_ij(1/z) using each row's own degree."""
        rows = []
        for i, d in enumerate(self.row_degrees()):
            if d == DEG_ZERO:
                rows.append([Poly.zero(self.field)] * self.cols)
            else:
                rows.append([e.reversed(d) for e in self.row(i)])
        return PolyMatrix.from_entries(self.field, rows)

    # -- determinants and minors

    def det(self) -> Poly:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return poly_det(self.entries(), self.field)

    def minors(self, size: int):
        """Yield ``((rows, cols), det)`` over all size x size minors, lexicographic."""
        E = self.entries()
        for r in combinations(range(self.rows), size):
            for c in combinations(range(self.cols), size):
                yield (r, c), poly_det([[E[i][j] for j in c] for i in r], self.field)

    def __repr__(self):
        rows = ["[" + ", ".join(repr(e) for e in row) + "]" for row in self.entries()]
        return "PolyMatrix([" + ", ".join(rows) + "])"


def poly_det(entries, field: GF) -> Poly:
    """Determinant by Laplace expansion with memoisation over column subsets."""
    n = len(entries)
    if n == 0:
        return Poly.one(field)
    memo = {}

    def rec(r: int, mask: int) -> Poly:
        if r == n:
            return Poly.one(field)
        key = mask
        if key in memo:
            return memo[key]
        acc = Poly.zero(field)
        sign_pos = 0
        for c in range(n):
            if mask >> c & 1:
                continue
            e = entries[r][c]
            if not e.is_zero():
                term = e * rec(r + 1, mask | (1 << c))
                acc = acc - term if sign_pos % 2 else acc + term
            sign_pos += 1
        memo[key] = acc
        return acc

    return rec(0, 0)


def hstack(mats) -> PolyMatrix:
    mats = list(mats)
    F = mats[0].field
    d = max(m.coeffs.shape[2] for m in mats)
    parts = []
    for m in mats:
        c = np.zeros(m.shape + (d,), dtype=np.int64)
        c[:, :, : m.coeffs.shape[2]] = m.coeffs
        parts.append(c)
    return PolyMatrix(F, np.concatenate(parts, axis=1))


def vstack(mats) -> PolyMatrix:
    return hstack([m.T for m in mats]).T
