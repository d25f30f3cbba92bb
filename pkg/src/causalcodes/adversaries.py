"""Jamming strategies.

Each strategy is a small state machine built fresh for one transmission and
called once per packet with an :class:`~causalcodes.channel.AdversaryView`.
Strategies that need the public code description take a ``code`` object
exposing ``n``, ``sample_codeword(rng)`` and ``sample_consistent(known, rng)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .channel import PASS, Action, AdversaryView, ChannelConfig, add, overwrite
from .params import as_fraction, floor_frac

KINDS = (
    "passive",
    "random_add_prefix",
    "random_overwrite_prefix",
    "random_block_overwrite",
    "halves_attack",
    "wait_and_attack",
    "replay_add",
    "replay_overwrite",
)


class Passive:
    def __call__(self, view: AdversaryView) -> Action:
        return PASS


class RandomAddPrefix:
    """Add a uniform error to each of the first ``length`` packets."""

    def __init__(self, length: int, rng: np.random.Generator):
        self.length = length
        self.rng = rng

    def __call__(self, view):
        if view.step < self.length:
            return add(view.field.random(self.rng, view.packet_len))
        return PASS


class RandomBlockOverwrite:
    """Replace packets ``start .. start+length-1`` with uniform garbage."""

    def __init__(self, start: int, length: int, rng: np.random.Generator):
        self.start = start
        self.length = length
        self.rng = rng

    def __call__(self, view):
        if self.start <= view.step < self.start + self.length:
            return overwrite(view.field.random(self.rng, view.packet_len))
        return PASS


class RandomOverwritePrefix(RandomBlockOverwrite):
    def __init__(self, length: int, rng: np.random.Generator):
        super().__init__(0, length, rng)


class HalvesAttack:
    """Pick a random codeword x' up front, then copy it over one half of x.

    The coin decides which half; the first half is ``ceil(n/2)`` long.
    """

    def __init__(self, code, rng: np.random.Generator):
        self.decoy = code.sample_codeword(rng)
        half = math.ceil(code.n / 2)
        self.span = (0, half) if rng.integers(2) == 0 else (half, code.n)

    def __call__(self, view):
        lo, hi = self.span
        if lo <= view.step < hi and view.budget_remaining > 0:
            return overwrite(self.decoy[view.step])
        return PASS


class WaitAndAttack:
    """Listen, scramble, then impersonate a codeword that agrees with what was heard.

    Packets ``[0, a)`` pass untouched with ``a = floor((1-2p+d) n)``, packets
    ``[a, b)`` with ``b = floor((1-2p+2d) n)`` are overwritten by uniform
    garbage, and at step ``b`` the jammer draws x' from the codewords that
    repeat every packet it has seen below ``a``.  A coin then picks the
    first or second half of ``[b, n)`` to overwrite with x'.
    """

    def __init__(self, code, p, d, rng: np.random.Generator):
        p = as_fraction(p)
        d = as_fraction(d)
        if not (d == 0 or d < p):
            raise ValueError("wait-and-attack needs d = 0 or d < p")
        n = code.n
        self.code = code
        self.rng = rng
        self.listen_end = max(floor_frac(1 - 2 * p + d, n), 0)
        self.scramble_end = max(floor_frac(1 - 2 * p + 2 * d, n), self.listen_end)
        rest = n - self.scramble_end
        mid = self.scramble_end + math.ceil(rest / 2)
        self.span = (self.scramble_end, mid) if rng.integers(2) == 0 else (mid, n)
        self.decoy = None

    def __call__(self, view):
        i = view.step
        if i < self.listen_end:
            return PASS
        if i < self.scramble_end:
            if view.budget_remaining == 0:
                return PASS
            return overwrite(view.field.random(self.rng, view.packet_len))
        if self.decoy is None:
            heard = {j: row for j, row in view.visible.items() if j < self.listen_end}
            self.decoy = self.code.sample_consistent(heard, self.rng)
        lo, hi = self.span
        if lo <= i < hi and view.budget_remaining > 0:
            return overwrite(self.decoy[i])
        return PASS


class ReplayAdd:
    """Adaptive additive jammer built from packets it has already seen.

    Each corrupted packet receives either the difference of two observed
    packets or a data change whose signature part is computed under an
    observed key, guessing that the unseen key repeats it.
    """

    def __init__(self, layout, start: int, rng: np.random.Generator):
        self.layout = layout
        self.start = start
        self.rng = rng

    def __call__(self, view):
        if view.step < self.start or view.budget_remaining == 0 or not view.visible:
            return PASS
        fld = view.field
        seen = sorted(view.visible)
        a = seen[self.rng.integers(len(seen))]
        if self.rng.integers(2) == 0 and len(seen) > 1:
            b = seen[self.rng.integers(len(seen))]
            while b == a:
                b = seen[self.rng.integers(len(seen))]
            return add((view.visible[a] - view.visible[b]) % fld.q)
        s = self.layout.s
        dw = fld.random(self.rng, s * s)
        if not dw.any():
            dw[0] = 1
        _, r_guess, _ = self.layout.split(np.asarray(view.visible[a]))
        dsig = fld.matvec(dw.reshape(s, s), r_guess)
        return add(self.layout.assemble(dw, fld.zeros(s), dsig))


class ReplayOverwrite:
    """Overwrite packets with verbatim copies of observed packets."""

    def __init__(self, start: int, rng: np.random.Generator):
        self.start = start
        self.rng = rng

    def __call__(self, view):
        if view.step < self.start or view.budget_remaining == 0 or not view.visible:
            return PASS
        seen = sorted(view.visible)
        return overwrite(view.visible[seen[self.rng.integers(len(seen))]])


@dataclass(frozen=True)
class AttackSpec:
    """Serializable description of a strategy: a kind plus its parameters."""

    kind: str = "passive"
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown attack kind {self.kind!r}; expected one of {KINDS}")

    @property
    def error_model(self) -> str | None:
        if self.kind in ("random_add_prefix", "replay_add"):
            return "additive"
        if self.kind == "passive":
            return None
        return "overwrite"

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.params}

    @classmethod
    def from_dict(cls, data: dict) -> "AttackSpec":
        data = dict(data)
        return cls(data.pop("kind", "passive"), data)

    def build(self, code, config: ChannelConfig, rng: np.random.Generator):
        """A fresh strategy for one transmission of ``code`` over ``config``."""
        kw = self.params
        budget = config.budget
        if self.kind == "passive":
            return Passive()
        if self.kind == "random_add_prefix":
            return RandomAddPrefix(int(kw.get("length", budget)), rng)
        if self.kind == "random_overwrite_prefix":
            return RandomOverwritePrefix(int(kw.get("length", budget)), rng)
        if self.kind == "random_block_overwrite":
            length = int(kw.get("length", budget))
            if length > budget:
                raise ValueError(f"block of {length} packets exceeds the budget of {budget}")
            start = kw.get("start", "middle")
            if start == "middle":
                start = (config.n - length) // 2
            elif start == "random":
                start = int(rng.integers(0, config.n - length + 1))
            return RandomBlockOverwrite(int(start), length, rng)
        if self.kind == "halves_attack":
            return HalvesAttack(code, rng)
        if self.kind == "wait_and_attack":
            return WaitAndAttack(code, config.p, config.d, rng)
        if self.kind == "replay_add":
            return ReplayAdd(code.layout, int(kw.get("start", config.window)), rng)
        if self.kind == "replay_overwrite":
            return ReplayOverwrite(int(kw.get("start", config.window)), rng)
        raise AssertionError(self.kind)
