"""Exact arithmetic in prime and extension fields F_{p^N}.

Elements are stored as canonical integers ``sum(c_i * p**i)`` where ``c_i`` are
the coefficients of the element written as a polynomial in the generator of
the extension (little-endian).  Every arithmetic method accepts Python ints or
integer numpy arrays and broadcasts like numpy.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

MAX_FIELD_SIZE = 2**20
_TABLE_LIMIT = 1024


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


# -- polynomials over F_p as ascending int lists (only used while building a field)

def _fp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, m, p):
    a = _fp_trim(a)
    m = _fp_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _fp_trim(a)
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= N/2."""
    m = _fp_trim(modulus)
    N = len(m) - 1
    if N < 1:
        return False
    if N == 1:
        return True
    for d in range(1, N // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _fp_mod(m, list(low) + [1], p):
                return False
    return True


def _encode(coeffs, p):
    return sum(int(c) * p**i for i, c in enumerate(coeffs))


def _decode(value, p, N):
    out = []
    for _ in range(N):
        value, r = divmod(value, p)
        out.append(r)
    return out


def lowest_irreducible(p: int, N: int) -> tuple[int, ...]:
    """Monic irreducible polynomial of degree N with the smallest encoding."""
    for low in range(p**N):
        cand = _decode(low, p, N) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {N} over F_{p}")  # pragma: no cover


class GF:
    """The finite field F_{p^N}.

    ``modulus`` is the monic irreducible polynomial (ascending coefficients)
    defining the extension and ``alpha`` the designated primitive element,
    both fixed at construction.  Use :func:`field_create` rather than calling
    this directly so that equal parameters share one instance.
    """

    def __init__(self, p: int, N: int = 1, modulus=None):
        if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
            raise ValueError(f"characteristic must be prime, got {p!r}")
        if N < 1:
            raise ValueError(f"extension degree must be >= 1, got {N}")
        p, N = int(p), int(N)
        if p**N > MAX_FIELD_SIZE:
            raise ValueError(f"field size {p}^{N} exceeds {MAX_FIELD_SIZE}")
        if modulus is None:
            modulus = (0, 1) if N == 1 else lowest_irreducible(p, N)
        modulus = tuple(int(c) % p for c in modulus)
        modulus = tuple(_fp_trim(modulus))
        if len(modulus) != N + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {N}")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.N = N
        self.q = p**N
        self.modulus = modulus
        self.alpha = self._find_primitive()
        self._build_tables()

    # -- construction helpers

    def _slow_mul(self, a: int, b: int) -> int:
        if self.N == 1:
            return a * b % self.p
        prod = _fp_mul(_decode(a, self.p, self.N), _decode(b, self.p, self.N), self.p)
        return _encode(_fp_mod(prod, self.modulus, self.p), self.p)

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def _find_primitive(self) -> int:
        order = self.q - 1
        if order == 1:
            return 1
        factors = prime_factors(order)
        for g in range(1, self.q):
            if all(self._slow_pow(g, order // r) != 1 for r in factors):
                return g
        raise AssertionError("multiplicative group is cyclic")  # pragma: no cover

    def _build_tables(self):
        q, p, N = self.q, self.p, self.N
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        # multiplication by alpha is F_p-linear, precompute images of the basis
        images = [self._slow_mul(self.alpha, p**i) for i in range(N)]
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            if N == 1:
                cur = cur * self.alpha % p
            elif p == 2:
                nxt = 0
                for bit in range(N):
                    if cur >> bit & 1:
                        nxt ^= images[bit]
                cur = nxt
            else:
                digits = _decode(cur, p, N)
                acc = [0] * N
                for d, img in zip(digits, images):
                    if d:
                        for j, c in enumerate(_decode(img, p, N)):
                            acc[j] = (acc[j] + d * c) % p
                cur = _encode(acc, p)
        exp[q - 1:] = exp[: q - 1]
        self._exp = exp
        self._log = log
        vals = np.arange(q, dtype=np.int64)
        self._neg = self._digitwise(np.zeros(q, dtype=np.int64), vals, -1)
        self._add_table = None
        if N > 1 and p > 2 and q <= _TABLE_LIMIT:
            a, b = np.meshgrid(vals, vals, indexing="ij")
            self._add_table = self._digitwise(a, b, 1)

    def _digitwise(self, a, b, sign):
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.N):
            da = (a // pw) % p
            db = (b // pw) % p
            out += ((da + sign * db) % p) * pw
            pw *= p
        return out

    # -- identity

    def __repr__(self):
        if self.N == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.N}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.N, self.modulus) == (
            other.p, other.N, other.modulus)

    def __hash__(self):
        return hash((self.p, self.N, self.modulus))

    def __reduce__(self):
        return field_create, (self.p, self.N, self.modulus)

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, value)

    @property
    def characteristic(self) -> int:
        return self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def coeffs(self, value: int) -> list[int]:
        return _decode(int(value), self.p, self.N)

    def from_coeffs(self, coeffs) -> int:
        coeffs = [int(c) % self.p for c in coeffs]
        if self.N > 1 and len(coeffs) > self.N:
            coeffs = _fp_mod(coeffs, self.modulus, self.p)
        return _encode(coeffs, self.p)

    # -- vectorised arithmetic

    def validate(self, a):
        a = np.asarray(a, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise ValueError(f"values outside [0, {self.q - 1}] for {self}")
        return a

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.N == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._digitwise(a, b, 1)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.N == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._neg[a]

    def sub(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.N == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.N == 1:
            return a * b % self.p
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        e = int(e)
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self._exp[(self._log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def alpha_pow(self, e):
        """alpha**e for integer (array) exponents, negative allowed."""
        e = np.asarray(e, dtype=np.int64)
        return self._exp[e % (self.q - 1)]

    def log(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ValueError("logarithm of zero")
        return self._log[a]

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        a = int(a)
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        lg = int(self._log[a])
        from math import gcd
        return (self.q - 1) // gcd(lg, self.q - 1)

    def dot(self, a, b):
        """Inner product along the last axis."""
        prod = self.mul(a, b)
        return self.sum(prod, axis=-1)

    def sum(self, a, axis=-1):
        a = np.asarray(a, dtype=np.int64)
        if self.N == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        a = np.moveaxis(a, axis, 0)
        acc = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            acc = self.add(acc, row)
        return acc

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.N == 1:
            if self.p < 2**20:
                # entries < 2^20, products < 2^40: exact in int64 for inner sizes < 2^23
                return (A @ B) % self.p
        if A.shape[-1] == 0:
            return np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
        acc = None
        for l in range(A.shape[-1]):
            term = self.mul(A[..., l, None], B[..., l, :])
            acc = term if acc is None else self.add(acc, term)
        return acc


@functools.lru_cache(maxsize=None)
def _cached_field(p, N, modulus):
    return GF(p, N, modulus)


def field_create(p: int, N: int = 1, modulus=None) -> GF:
    """Return the field F_{p^N}, validated and cached.

    >>> F = field_create(2, 2, (1, 1, 1))
    >>> F.alpha, int(F.mul(2, 2))
    (2, 3)
    """
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"characteristic must be prime, got {p!r}")
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError(f"extension degree must be >= 1, got {N!r}")
    if modulus is not None:
        modulus = tuple(int(c) % int(p) for c in modulus)
    return _cached_field(int(p), int(N), modulus)


def primitive_element(field: GF) -> "FieldElement":
    return FieldElement(field, field.alpha)


class FieldElement:
    """A single element of a :class:`GF`, with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value):
        if isinstance(value, FieldElement):
            if value.field != field:
                raise ValueError("element belongs to a different field")
            value = value.value
        value = int(value)
        if not 0 <= value < field.q:
            raise ValueError(f"{value} is not an element of {field}")
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.value)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("cannot mix elements of different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return FieldElement(self.field, int(other) % self.field.p if self.field.N == 1
                                else int(other)).value
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field}({self.value})"


def field_arith(a: FieldElement, b, op: str) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, div, pow, inv, neg} to field elements.

    For ``pow`` the second argument is an integer exponent; ``inv`` and
    ``neg`` ignore it.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise ValueError(f"unknown field operation {op!r}")
