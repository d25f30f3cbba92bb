"""Prime-field arithmetic and small dense linear algebra.

Scalars are plain ``int`` in ``[0, q)``; vectors and matrices are numpy
arrays.  Arrays use ``int64`` while ``q < 2**31`` (so every product of two
reduced entries fits in a signed 64-bit word) and ``object`` dtype above
that, where Python integers take over.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_PRIME = 2**31 - 1

_INT64_LIMIT = 2**31
_TRIAL_DIVISION_LIMIT = 2**40


class FieldError(ValueError):
    """Base class for field configuration and arithmetic errors."""


class ModulusMismatch(FieldError):
    pass


class SingularMatrixError(FieldError):
    """Raised when Gaussian elimination finds no pivot in some column."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0 or q % 3 == 0:
        return False
    if q >= _TRIAL_DIVISION_LIMIT:
        # trial division is too slow past ~2**40; fall back to sympy's
        # deterministic test (exact for 64-bit inputs)
        from sympy import isprime

        return bool(isprime(q))
    f = 5
    limit = math.isqrt(q)
    while f <= limit:
        if q % f == 0 or q % (f + 2) == 0:
            return False
        f += 6
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo a prime ``q``."""

    q: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)) or not is_prime(int(self.q)):
            raise FieldError(f"modulus must be prime, got {self.q!r}")
        if self.q >= 2**64:
            raise FieldError("moduli beyond 64 bits are not supported")
        object.__setattr__(self, "q", int(self.q))

    @property
    def dtype(self):
        return np.int64 if self.q < _INT64_LIMIT else object

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(int(value) % self.q, self)

    # -- scalars -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.q)

    # -- arrays ------------------------------------------------------------

    def array(self, values) -> np.ndarray:
        """Copy ``values`` into a reduced array of this field's dtype."""
        if self.dtype is object:
            arr = np.array(values, dtype=object)
            return np.vectorize(lambda x: int(x) % self.q, otypes=[object])(arr) if arr.size else arr
        return np.asarray(values, dtype=np.int64) % self.q

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(0)
            return out
        return np.zeros(shape, dtype=np.int64)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        """Uniform field elements of the given shape."""
        if self.dtype is object:
            flat = [int(x) for x in rng.integers(0, self.q, size=int(np.prod(shape)), dtype=np.uint64)]
            return np.array(flat, dtype=object).reshape(shape)
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def contains(self, arr) -> bool:
        arr = np.asarray(arr)
        if arr.size == 0:
            return True
        return bool(np.all(arr >= 0) and np.all(arr < self.q))

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """``a @ b`` over the field; ``b`` may be a vector or a matrix."""
        a = np.asarray(a)
        b = np.asarray(b)
        if a.ndim != 2 or b.ndim not in (1, 2) or a.shape[1] != b.shape[0]:
            raise ValueError(f"cannot multiply shapes {a.shape} and {b.shape}")
        if self.dtype is object:
            return (a.dot(b)) % self.q
        out = np.zeros((a.shape[0],) + b.shape[1:], dtype=np.int64)
        # one rank-1 update per inner index keeps every intermediate < 2q^2
        for j in range(a.shape[1]):
            out = (out + np.multiply.outer(a[:, j], b[j])) % self.q
        return out

    def matvec(self, m: np.ndarray, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.ndim != 1:
            raise ValueError("matvec expects a vector")
        return self.matmul(m, v)

    def batched_matvec(self, mats: np.ndarray, vecs: np.ndarray) -> np.ndarray:
        """``out[..., a] = sum_b mats[..., a, b] * vecs[..., b]`` with broadcasting."""
        mats = np.asarray(mats)
        vecs = np.asarray(vecs)
        if mats.shape[-1] != vecs.shape[-1]:
            raise ValueError(f"inner dimensions differ: {mats.shape} vs {vecs.shape}")
        out = None
        for b in range(mats.shape[-1]):
            term = (mats[..., :, b] * vecs[..., None, b]) % self.q
            out = term if out is None else (out + term) % self.q
        return out

    def inverse(self, m: np.ndarray) -> np.ndarray:
        """Gauss-Jordan inverse; raises :class:`SingularMatrixError`."""
        m = np.asarray(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"inverse needs a square matrix, got shape {m.shape}")
        k = m.shape[0]
        aug = np.concatenate([self.array(m), self.identity(k)], axis=1)
        for col in range(k):
            nz = np.nonzero(aug[col:, col] != 0)[0]
            if nz.size == 0:
                raise SingularMatrixError(f"no pivot in column {col}")
            piv = col + int(nz[0])
            if piv != col:
                aug[[col, piv]] = aug[[piv, col]]
            aug[col] = (aug[col] * self.inv(int(aug[col, col]))) % self.q
            factors = aug[:, col].copy()
            factors[col] = 0
            aug = (aug - np.multiply.outer(factors, aug[col]) % self.q) % self.q
        return aug[:, k:]

    def identity(self, k: int) -> np.ndarray:
        out = self.zeros((k, k))
        for i in range(k):
            out[i, i] = 1
        return out


@dataclass(frozen=True)
class FieldElement:
    """A single element, for code that wants operator syntax."""

    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"{self.value} is not reduced modulo {self.field.q}")

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise ModulusMismatch(f"moduli differ: {self.field.q} vs {other.field.q}")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field.add(self.value, other.value), self.field)

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field.sub(self.value, other.value), self.field)

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field.mul(self.value, other.value), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self):
        return self.value


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


@functools.lru_cache(maxsize=None)
def field_for(q: int) -> PrimeField:
    """Shared instance per modulus; the primality check runs once."""
    return PrimeField(q)
