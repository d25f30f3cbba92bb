"""Matrix-hash authentication of packets.

The hash of a data block ``w`` (``s*s`` sub-symbols, reshaped row-major into
an ``s x s`` matrix ``W``) under key ``r`` (``s`` sub-symbols) is ``W @ r``.
For a fixed nonzero change to ``W`` at most ``q**(s-1)`` of the ``q**s`` keys
leave the hash unchanged, so a forger who never sees the key succeeds with
probability at most ``1/q``.

Two packet layouts are used:

* single-key packets ``(w | r | sigma)`` with ``sigma = hash(w, r)``;
* pairwise packets ``(w | r_1..r_n | sigma_1..sigma_n)`` where packet ``i``
  stores ``sigma_ij = hash(w_j, r_ij)``, a signature of packet ``j``'s data
  under a key only packet ``i`` carries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import PrimeField


def hash_block(field: PrimeField, w: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Signature ``W @ r`` of the ``s*s`` data block ``w`` under key ``r``."""
    w = np.asarray(w)
    r = np.asarray(r)
    s = r.shape[-1]
    if r.ndim != 1 or w.shape != (s * s,):
        raise ValueError(f"expected w of length {s * s} and r of length {s}, got {w.shape} and {r.shape}")
    return field.matvec(w.reshape(s, s), r)


@dataclass(frozen=True)
class AdditivePacket:
    w: np.ndarray
    r: np.ndarray
    sigma: np.ndarray


@dataclass(frozen=True)
class PairwisePacket:
    w: np.ndarray
    keys: np.ndarray  # (n, s)
    sigs: np.ndarray  # (n, s)


@dataclass(frozen=True)
class AdditiveLayout:
    """Sub-symbol layout ``w | r | sigma`` of a single-key packet."""

    s: int

    @property
    def data_len(self) -> int:
        return self.s * self.s

    @property
    def packet_len(self) -> int:
        return self.s * self.s + 2 * self.s

    def assemble(self, w, r, sigma) -> np.ndarray:
        return np.concatenate([np.asarray(w), np.asarray(r), np.asarray(sigma)], axis=-1)

    def split(self, rows: np.ndarray):
        """``(w, r, sigma)`` views of one packet or a stack of packets."""
        s2 = self.data_len
        return rows[..., :s2], rows[..., s2 : s2 + self.s], rows[..., s2 + self.s :]

    def unpack(self, row: np.ndarray) -> AdditivePacket:
        return AdditivePacket(*self.split(np.asarray(row)))


@dataclass(frozen=True)
class PairwiseLayout:
    """Sub-symbol layout ``w | r_i1..r_in | sigma_i1..sigma_in``."""

    s: int
    n: int

    @property
    def data_len(self) -> int:
        return self.s * self.s

    @property
    def packet_len(self) -> int:
        return self.s * self.s + 2 * self.n * self.s

    def assemble(self, w, keys, sigs) -> np.ndarray:
        w = np.asarray(w)
        lead = w.shape[:-1]
        return np.concatenate(
            [w, np.asarray(keys).reshape(lead + (-1,)), np.asarray(sigs).reshape(lead + (-1,))], axis=-1
        )

    def split(self, rows: np.ndarray):
        """``(w, keys, sigs)`` with keys and sigs shaped ``(..., n, s)``."""
        s2 = self.data_len
        ns = self.n * self.s
        lead = rows.shape[:-1]
        w = rows[..., :s2]
        keys = rows[..., s2 : s2 + ns].reshape(lead + (self.n, self.s))
        sigs = rows[..., s2 + ns :].reshape(lead + (self.n, self.s))
        return w, keys, sigs

    def unpack(self, row: np.ndarray) -> PairwisePacket:
        return PairwisePacket(*self.split(np.asarray(row)))


def verify_single(field: PrimeField, packet: AdditivePacket) -> bool:
    """Accept a received single-key packet iff its signature matches."""
    return bool(np.array_equal(hash_block(field, packet.w, packet.r), packet.sigma))


def verify_rows(field: PrimeField, layout: AdditiveLayout, rows: np.ndarray) -> np.ndarray:
    """Vectorised :func:`verify_single` over a ``(n, packet_len)`` word."""
    w, r, sigma = layout.split(np.asarray(rows))
    W = w.reshape(w.shape[:-1] + (layout.s, layout.s))
    return np.all(field.batched_matvec(W, r) == sigma, axis=-1)


def mutually_consistent(field: PrimeField, yi: PairwisePacket, yj: PairwisePacket, i: int, j: int) -> bool:
    """Both cross signatures between received packets ``i`` and ``j`` check out."""
    if i == j:
        raise ValueError("mutual consistency is defined for distinct packets")
    return bool(
        np.array_equal(hash_block(field, yj.w, yi.keys[j]), yi.sigs[j])
        and np.array_equal(hash_block(field, yi.w, yj.keys[i]), yj.sigs[i])
    )


def signature_matrix(field: PrimeField, layout: PairwiseLayout, w: np.ndarray, keys: np.ndarray) -> np.ndarray:
    """``sigs[i, j] = hash(w[j], keys[i, j])`` for all ordered pairs."""
    W = np.asarray(w).reshape(layout.n, layout.s, layout.s)
    return field.batched_matvec(W[None, :, :, :], keys)


def consistency_matrix(field: PrimeField, layout: PairwiseLayout, rows: np.ndarray) -> np.ndarray:
    """Boolean ``(n, n)`` matrix of mutual consistency; the diagonal is True."""
    w, keys, sigs = layout.split(np.asarray(rows))
    one_way = np.all(signature_matrix(field, layout, w, keys) == sigs, axis=-1)
    mutual = one_way & one_way.T
    np.fill_diagonal(mutual, True)
    return mutual
