"""Erasure code plus per-packet signatures, for delayed additive jammers.

Every packet carries its own fresh key and the signature of its data block.
A delayed additive jammer cannot see the key of the packet it corrupts, so
any change to the data is caught with probability at least ``1 - 1/q``.
The decoder drops packets that fail authentication and erasure-decodes the
rest, giving rate ``k/n = 1 - floor(pn)/n`` for the data portion.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .auth import AdditiveLayout, verify_rows
from .erasure import DecodeFailure, ErasureCode
from .params import Params


class AdditiveCodec:
    def __init__(self, params: Params):
        if params.budget >= params.n:
            raise ValueError("the adversary may corrupt every packet; no rate is possible")
        self.params = params
        self.field = params.field
        self.n = params.n
        self.k = params.n - params.budget
        self.layout = AdditiveLayout(params.s)
        self.erasure = ErasureCode(self.field, self.n, self.k, lanes=self.layout.data_len)

    def __repr__(self):
        return f"AdditiveCodec({self.params})"

    @property
    def packet_len(self) -> int:
        return self.layout.packet_len

    @property
    def rate(self) -> float:
        """Data sub-symbols per transmitted sub-symbol."""
        return self.k * self.layout.data_len / (self.n * self.layout.packet_len)

    def _packets(self, data: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        s = self.params.s
        keys = self.field.random(rng, (self.n, s))
        W = data.reshape(self.n, s, s)
        sigma = self.field.batched_matvec(W, keys)
        return self.layout.assemble(data, keys, sigma)

    def encode(self, message: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """``(k, s*s)`` message to an ``(n, s*s + 2s)`` codeword with fresh keys."""
        return self._packets(self.erasure.encode(message), rng)

    def accepted(self, received: np.ndarray) -> np.ndarray:
        """Indices of received packets whose signature verifies."""
        received = np.asarray(received)
        if received.shape != (self.n, self.packet_len):
            raise ValueError(f"received word must have shape {(self.n, self.packet_len)}, got {received.shape}")
        return np.flatnonzero(verify_rows(self.field, self.layout, received))

    def decode(self, received: np.ndarray) -> np.ndarray:
        good = self.accepted(received)
        if good.size < self.k:
            raise DecodeFailure(f"only {good.size} of {self.n} packets authenticated, need {self.k}")
        positions = good[: self.k]
        data = np.asarray(received)[positions, : self.layout.data_len]
        return self.erasure.decode_from_subset(positions, data)

    # public code description, used by adversaries

    def sample_codeword(self, rng: np.random.Generator) -> np.ndarray:
        message = self.field.random(rng, (self.k, self.layout.data_len))
        return self.encode(message, rng)

    def sample_consistent(self, known: Mapping[int, np.ndarray], rng: np.random.Generator) -> np.ndarray:
        """A codeword that repeats the ``known`` packets verbatim."""
        data_known = {i: np.asarray(row)[: self.layout.data_len] for i, row in known.items()}
        message = self.erasure.consistent_message(data_known, rng)
        word = self.encode(message, rng)
        for i, row in known.items():
            word[i] = row
        return word

