"""Plain Reed-Solomon code with exhaustive decoding, for small experiments.

This is the classical scheme that reaches rate ``1 - 2p`` against an
omniscient jammer, and the target of the converse attacks.  Packets are
single field elements (rows of length 1).  Decoding and the ambiguity
oracle enumerate the whole codebook, so ``q**k`` must stay small.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .erasure import DecodeFailure, ErasureCode
from .field import PrimeField
from .params import floor_frac

MAX_CODEBOOK = 1 << 21


class BaselineRS:
    packet_len = 1

    def __init__(self, field: PrimeField, n: int, k: int):
        self.field = field
        self.n = n
        self.k = k
        self.erasure = ErasureCode(field, n, k, lanes=1)
        self._codebook = None

    @classmethod
    def at_rate(cls, field: PrimeField, n: int, rate) -> "BaselineRS":
        k = floor_frac(rate, n)
        if k < 1:
            raise ValueError(f"rate {rate} gives no message symbols at n={n}")
        return cls(field, n, min(k, n))

    def __repr__(self):
        return f"BaselineRS(q={self.field.q}, n={self.n}, k={self.k})"

    @property
    def rate(self) -> float:
        return self.k / self.n

    def encode(self, message: np.ndarray, rng=None) -> np.ndarray:
        return self.erasure.encode(np.asarray(message).reshape(self.k, 1))

    def codebook(self) -> tuple[np.ndarray, np.ndarray]:
        """All ``(messages, codewords)`` with shapes ``(q**k, k)`` and ``(q**k, n)``."""
        if self._codebook is None:
            q = self.field.q
            size = q**self.k
            if size > MAX_CODEBOOK:
                raise ValueError(f"codebook of {size} words is too large to enumerate")
            idx = np.arange(size, dtype=np.int64)
            messages = np.stack([(idx // q**j) % q for j in range(self.k)], axis=1)
            words = self.field.matmul(messages, self.erasure.generator.T)
            self._codebook = (messages, words)
        return self._codebook

    def distances(self, received: np.ndarray) -> np.ndarray:
        _, words = self.codebook()
        return np.count_nonzero(words != np.asarray(received).reshape(1, self.n), axis=1)

    def decode(self, received: np.ndarray) -> np.ndarray:
        """Nearest codeword; ties and words beyond half the distance fail."""
        dist = self.distances(received)
        best = int(dist.min())
        hits = np.flatnonzero(dist == best)
        if hits.size > 1 or best > (self.n - self.k) // 2:
            raise DecodeFailure(f"no unique codeword within distance {(self.n - self.k) // 2}")
        messages, _ = self.codebook()
        return messages[hits[0]].reshape(self.k, 1)

    def within(self, received: np.ndarray, radius: int) -> np.ndarray:
        """Indices of codewords at Hamming distance ``<= radius``."""
        return np.flatnonzero(self.distances(received) <= radius)

    def ambiguous(self, received: np.ndarray, radius: int) -> bool:
        """Whether two distinct codewords explain ``received`` with ``radius`` changes each."""
        return self.within(received, radius).size >= 2

    def sample_codeword(self, rng: np.random.Generator) -> np.ndarray:
        return self.encode(self.field.random(rng, (self.k, 1)))

    def sample_consistent(self, known: Mapping[int, np.ndarray], rng: np.random.Generator) -> np.ndarray:
        message = self.erasure.consistent_message({i: np.asarray(v).reshape(1) for i, v in known.items()}, rng)
        return self.encode(message)
