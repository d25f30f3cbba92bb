"""Binary packet format: little-endian 8-byte field values, packet-major."""

from __future__ import annotations

import numpy as np

from .field import PrimeField

WIRE_DTYPE = np.dtype("<u8")


def to_bytes(word: np.ndarray) -> bytes:
    """Serialize an ``(n, packet_len)`` word (or a ``(k, lanes)`` message)."""
    word = np.asarray(word)
    if word.ndim != 2:
        raise ValueError(f"expected a 2-d array of packets, got shape {word.shape}")
    return np.ascontiguousarray(word.astype(object).astype(WIRE_DTYPE)).tobytes()


def from_bytes(data: bytes, packet_len: int, field: PrimeField) -> np.ndarray:
    if packet_len < 1 or len(data) % (8 * packet_len):
        raise ValueError(f"{len(data)} bytes is not a whole number of {packet_len}-value packets")
    raw = np.frombuffer(data, dtype=WIRE_DTYPE).reshape(-1, packet_len)
    if (raw >= field.q).any():
        raise ValueError(f"value out of range for F_{field.q}")
    return field.array(raw.astype(object))


def write_word(path, word: np.ndarray) -> None:
    with open(path, "wb") as fh:
        fh.write(to_bytes(word))


def read_word(path, packet_len: int, field: PrimeField) -> np.ndarray:
    with open(path, "rb") as fh:
        return from_bytes(fh.read(), packet_len, field)
