"""Block parameters shared by the codecs, the channel and the harness."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .field import DEFAULT_PRIME, PrimeField, field_for


def as_fraction(x) -> Fraction:
    """Exact rational for a user-supplied fraction such as ``0.3``.

    ``0.3 * 10`` is ``3.0000000000000004`` in floating point, which would
    move a ceiling; rounding through a bounded denominator avoids that.
    """
    if isinstance(x, Fraction):
        return x
    return Fraction(x).limit_denominator(1 << 20)


def floor_frac(x, n: int) -> int:
    return math.floor(as_fraction(x) * n)


def ceil_frac(x, n: int) -> int:
    return math.ceil(as_fraction(x) * n)


@dataclass(frozen=True)
class Params:
    """Block length ``n``, power ``p``, delay ``d``, sub-field prime ``q``
    and signature dimension ``s``."""

    n: int
    p: float
    d: float
    q: int = DEFAULT_PRIME
    s: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 <= as_fraction(self.p) <= 1 or not 0 <= as_fraction(self.d) <= 1:
            raise ValueError("p and d must lie in [0, 1]")
        if self.s < 1:
            raise ValueError("s must be positive")

    @property
    def field(self) -> PrimeField:
        return field_for(self.q)

    @property
    def budget(self) -> int:
        """Maximum number of packets the adversary may corrupt, floor(pn)."""
        return floor_frac(self.p, self.n)

    @property
    def window(self) -> int:
        """Delay in packets, ceil(dn)."""
        return ceil_frac(self.d, self.n)
