"""Convolutional codes as submodules of F_q[z]^n."""

from __future__ import annotations

import numpy as np

from . import polyalg
from .galois import GF
from .poly import DEG_ZERO, Poly, PolyMatrix, vstack
from .verdict import Verdict


def as_poly_vector(field: GF, v) -> list[Poly]:
    """Coerce a sequence of polynomials (or coefficient lists) or a 1 x n PolyMatrix."""
    if isinstance(v, PolyMatrix):
        if v.rows != 1:
            raise ValueError("expected a single-row matrix")
        return v.row(0)
    out = []
    for e in v:
        p = e if isinstance(e, Poly) else Poly(field, e)
        if p.field != field:
            raise ValueError("vector entry over a different field")
        out.append(p)
    return out


def vector_to_array(v: list[Poly], length: int | None = None) -> np.ndarray:
    """Coefficient array of shape (T, n): row t holds the vector multiplying z**t."""
    T = max([len(p.coeffs) for p in v] + [0]) if length is None else length
    out = np.zeros((T, len(v)), dtype=np.int64)
    for j, p in enumerate(v):
        m = min(T, len(p.coeffs))
        out[:m, j] = p.coeffs[:m]
    return out


def array_to_vector(field: GF, arr) -> list[Poly]:
    arr = np.asarray(arr, dtype=np.int64)
    return [Poly(field, arr[:, j]) for j in range(arr.shape[1])]


def vector_matrix_product(v: list[Poly], M: PolyMatrix) -> list[Poly]:
    row = PolyMatrix.from_entries(M.field, [v]) if v else PolyMatrix.zeros(M.field, 1, 0)
    return (row @ M).row(0)


class ConvolutionalCode:
    """An (n, k, delta) convolutional code over F_q.

    Built from a full-row-rank generator; the row-reduced generator
    ``G_min`` and, for noncatastrophic codes, a left-prime row-reduced
    parity-check ``H`` are computed once at construction.
    """

    def __init__(self, G: PolyMatrix, *, _parity: PolyMatrix | None = None):
        k, n = G.shape
        if not 1 <= k < n:
            raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
        if polyalg.poly_rank(G) != k:
            raise ValueError("generator matrix does not have full row rank")
        self.field = G.field
        self.n = n
        self.k = k
        self.G = G
        self.G_min, _ = polyalg.row_reduce(G)
        self.row_degrees = [int(d) for d in self.G_min.row_degrees()]
        self.degree = int(sum(self.row_degrees))
        self.noncatastrophic = polyalg.is_left_prime(self.G_min)
        self.H = None
        if self.noncatastrophic:
            self.H = _parity if _parity is not None else _parity_from_generator(self.G_min)
        self._hermite = None

    # -- constructors

    @classmethod
    def from_generator(cls, G: PolyMatrix) -> "ConvolutionalCode":
        return cls(G)

    @classmethod
    def from_parity_check(cls, H: PolyMatrix) -> "ConvolutionalCode":
        """The noncatastrophic code {c : H0 c^T = 0} where H0 is the left-prime factor of H."""
        r, n = H.shape
        if r >= n:
            raise ValueError("parity-check needs fewer rows than columns")
        if polyalg.poly_rank(H) != r:
            raise ValueError("parity-check matrix does not have full row rank")
        _, H0 = polyalg.left_prime_factor(H)
        G = polyalg.left_kernel(H0.T)
        H0, _ = polyalg.row_reduce(H0)
        return cls(G, _parity=H0)

    # -- parameters

    @property
    def L(self) -> int:
        return self.degree // self.k + self.degree // (self.n - self.k)

    @property
    def M(self) -> int:
        return self.degree // self.k + -(-self.degree // (self.n - self.k))

    @property
    def memory(self) -> int:
        return max(self.row_degrees)

    @property
    def params(self) -> tuple[int, int, int]:
        return self.n, self.k, self.degree

    def parity_degree(self) -> int:
        """Largest row degree nu of the parity-check matrix."""
        self._require_noncatastrophic()
        return int(max(self.H.row_degrees()))

    def generator_coefficients(self, length: int | None = None) -> list[np.ndarray]:
        return self.G_min.coefficient_list(length)

    def parity_coefficients(self, length: int | None = None) -> list[np.ndarray]:
        self._require_noncatastrophic()
        return self.H.coefficient_list(length)

    def _require_noncatastrophic(self):
        if not self.noncatastrophic:
            raise ValueError("operation requires a noncatastrophic code")

    # -- identity

    def hermite_key(self) -> PolyMatrix:
        """Echelon (column Hermite) form of the generator: a complete module invariant."""
        if self._hermite is None:
            self._hermite, self._hermite_U = polyalg.hermite_form(self.G_min, "column")
        return self._hermite

    def same_module(self, other: "ConvolutionalCode") -> bool:
        return (self.field == other.field and self.n == other.n and self.k == other.k
                and self.hermite_key() == other.hermite_key())

    def __eq__(self, other):
        if not isinstance(other, ConvolutionalCode):
            return NotImplemented
        return self.same_module(other)

    def __hash__(self):
        return hash((self.field, self.n, self.k, self.hermite_key()))

    def __repr__(self):
        tag = "noncatastrophic" if self.noncatastrophic else "catastrophic"
        return f"ConvolutionalCode(n={self.n}, k={self.k}, degree={self.degree}, {tag}, {self.field})"

    # -- encoding and membership

    def encode(self, u) -> list[Poly]:
        u = as_poly_vector(self.field, u)
        if len(u) != self.k:
            raise ValueError(f"message must have {self.k} components")
        return vector_matrix_product(u, self.G_min)

    def syndrome(self, c) -> list[Poly]:
        self._require_noncatastrophic()
        c = as_poly_vector(self.field, c)
        return vector_matrix_product(c, self.H.T)

    def contains(self, c) -> Verdict:
        """Module membership; the witness is the message u with u G_min = c."""
        c = as_poly_vector(self.field, c)
        if len(c) != self.n:
            raise ValueError(f"codeword must have {self.n} components")
        if self.noncatastrophic and any(not s.is_zero() for s in self.syndrome(c)):
            return Verdict(False, detail="nonzero syndrome")
        H = self.hermite_key()
        U = self._hermite_U
        residual = list(c)
        coef = []
        for i in range(self.k):
            piv = next(j for j in range(self.n) if not H[i, j].is_zero())
            q, r = divmod(residual[piv], H[i, piv])
            if not r.is_zero():
                return Verdict(False, detail="not a polynomial combination of the generators")
            coef.append(q)
            residual = [x - q * y for x, y in zip(residual, H.row(i))]
        if any(not x.is_zero() for x in residual):
            return Verdict(False, detail="not in the rational row space")
        return Verdict(True, witness=vector_matrix_product(coef, U))

    # -- derived codes

    def dual(self) -> "ConvolutionalCode":
        self._require_noncatastrophic()
        return ConvolutionalCode(self.H, _parity=self.G_min)

    def reverse(self) -> "ConvolutionalCode":
        """Code generated by z**nu_i g_ij(1/z) row by row."""
        self._require_noncatastrophic()
        return ConvolutionalCode(self.G_min.row_reverse())

    def complementary_minors_check(self) -> Verdict:
        """One constant links each k x k minor of G_min to the signed complementary minor of H."""
        self._require_noncatastrophic()
        gm = polyalg.full_size_minors(self.G_min)
        hm = dict(polyalg.full_size_minors(self.H))
        a, b = [], []
        for cols, m in gm:
            comp = tuple(j for j in range(self.n) if j not in cols)
            a.append(m)
            # the complementary minor carries the sign of the column shuffle
            b.append(-hm[comp] if sum(cols) % 2 else hm[comp])
        c = polyalg.constant_ratio(a, b)
        if c is None:
            return Verdict(False, detail="minors are not proportional")
        if c == 0:
            return Verdict(False, detail="zero ratio")
        return Verdict(True, witness=c)


def _parity_from_generator(G: PolyMatrix) -> PolyMatrix:
    # [G; N] unimodular, its inverse is [L^T H^T]
    k, n = G.shape
    N = polyalg.complete_to_unimodular(G)
    inv = polyalg.unimodular_inverse(vstack([G, N]))
    H = inv[:, list(range(k, n))].T
    H, _ = polyalg.row_reduce(H)
    return H


def random_noncatastrophic(field: GF, n: int, k: int, delta: int, rng, max_tries: int = 1000):
    """Random noncatastrophic (n, k, delta) code with generic row degrees.

    Row degrees are the most balanced split of delta; rejection sampling on
    left primeness and row reducedness.
    """
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    degs = [delta // k + (1 if i < delta % k else 0) for i in range(k)]
    for _ in range(max_tries):
        c = rng.integers(0, field.q, size=(k, n, max(degs) + 1))
        for i, d in enumerate(degs):
            c[i, :, d + 1:] = 0
        M = PolyMatrix(field, c)
        if M.row_degrees() != degs or not polyalg.is_row_reduced(M):
            continue
        if not polyalg.is_left_prime(M):
            continue
        return ConvolutionalCode(M)
    raise RuntimeError("could not sample a noncatastrophic code")


__all__ = [
    "ConvolutionalCode",
    "as_poly_vector",
    "vector_to_array",
    "array_to_vector",
    "vector_matrix_product",
    "random_noncatastrophic",
    "DEG_ZERO",
]
