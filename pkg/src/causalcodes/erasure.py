"""Interleaved Reed-Solomon erasure code.

Each packet carries ``lanes`` sub-symbols; every lane is an independent
length-``n`` Reed-Solomon codeword, and all lanes share the Vandermonde
generator ``L[i, j] = alpha_i ** j`` with evaluation points
``alpha_i = i + 1``.  Positions are 0-based throughout.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .field import PrimeField


class DecodeFailure(Exception):
    """The decoder could not produce any message."""

    def __init__(self, message: str, candidates: int = 0):
        super().__init__(message)
        self.candidates = candidates


class ErasureCode:
    def __init__(self, field: PrimeField, n: int, k: int, lanes: int = 1):
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        if n >= field.q:
            raise ValueError(f"n={n} distinct evaluation points need q > n (q={field.q})")
        if lanes < 1:
            raise ValueError("lanes must be positive")
        self.field = field
        self.n = n
        self.k = k
        self.lanes = lanes
        L = field.zeros((n, k))
        for i in range(n):
            acc = 1
            for j in range(k):
                L[i, j] = acc
                acc = (acc * (i + 1)) % field.q
        L.setflags(write=False)
        self.generator = L
        self._inverses: dict[tuple[int, ...], np.ndarray] = {}

    def __repr__(self):
        return f"ErasureCode(q={self.field.q}, n={self.n}, k={self.k}, lanes={self.lanes})"

    def _check_rows(self, rows: np.ndarray, count: int, what: str) -> np.ndarray:
        rows = np.asarray(rows)
        if rows.shape != (count, self.lanes):
            raise ValueError(f"{what} must have shape {(count, self.lanes)}, got {rows.shape}")
        return rows

    def encode(self, message: np.ndarray) -> np.ndarray:
        """Map a ``(k, lanes)`` message to the ``(n, lanes)`` codeword."""
        message = self._check_rows(message, self.k, "message")
        return self.field.matmul(self.generator, message)

    def restricted_inverse(self, positions: Iterable[int]) -> np.ndarray:
        key = tuple(int(i) for i in positions)
        inv = self._inverses.get(key)
        if inv is None:
            if len(key) != self.k or len(set(key)) != self.k:
                raise ValueError(f"need {self.k} distinct positions, got {key}")
            if min(key) < 0 or max(key) >= self.n:
                raise ValueError(f"positions out of range [0, {self.n})")
            inv = self.field.inverse(self.generator[list(key)])
            inv.setflags(write=False)
            self._inverses[key] = inv
        return inv

    def decode_from_subset(self, positions: Iterable[int], rows: np.ndarray) -> np.ndarray:
        """Recover the message from the codeword rows at ``k`` positions."""
        inv = self.restricted_inverse(positions)
        rows = self._check_rows(rows, self.k, "rows")
        return self.field.matmul(inv, rows)

    def check_consistency(self, claim: np.ndarray, positions: Iterable[int], rows: np.ndarray) -> bool:
        """True iff the generator restricted to ``positions`` maps ``claim`` onto ``rows``."""
        positions = list(positions)
        claim = self._check_rows(claim, self.k, "claim")
        rows = self._check_rows(rows, len(positions), "rows")
        return bool(np.array_equal(self.field.matmul(self.generator[positions], claim), rows))

    def consistent_message(self, known: Mapping[int, np.ndarray], rng: np.random.Generator) -> np.ndarray:
        """A uniformly random message whose codeword matches ``known`` rows.

        When ``known`` has fewer than ``k`` positions the free positions get
        uniform values; otherwise the first ``k`` known positions determine
        the message.
        """
        chosen = {i: np.asarray(known[i]) for i in sorted(known)[: self.k]}
        if len(chosen) < self.k:
            free = [i for i in range(self.n) if i not in known]
            extra = rng.choice(free, size=self.k - len(chosen), replace=False)
            values = self.field.random(rng, (len(extra), self.lanes))
            chosen.update({int(i): row for i, row in zip(extra, values)})
        positions = sorted(chosen)
        return self.decode_from_subset(positions, np.stack([chosen[i] for i in positions]))
