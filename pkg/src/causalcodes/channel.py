"""Causal adversarial channel.

The channel runs a transmission packet by packet.  Before packet ``i`` is
sent the adversary sees a view holding exactly the packets it is allowed to
know (indices ``j <= i - w`` with ``w = ceil(dn)``; for jam-or-listen
jammers, minus every packet it has touched) and answers with an
:class:`Action`.  Budget and error model are enforced here, so a buggy
strategy is reported as a :class:`ChannelViolation` rather than as a
decoder failure.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

from .field import PrimeField
from .params import ceil_frac, floor_frac

ADDITIVE = "additive"
OVERWRITE = "overwrite"


class ChannelViolation(RuntimeError):
    """The adversary broke the channel contract."""


class PowerViolation(ChannelViolation):
    pass


class ModelViolation(ChannelViolation):
    pass


@dataclass(frozen=True)
class ChannelConfig:
    n: int
    p: float
    d: float
    error_model: str = OVERWRITE
    jam_or_listen: bool = False

    def __post_init__(self):
        if self.error_model not in (ADDITIVE, OVERWRITE):
            raise ValueError(f"error_model must be {ADDITIVE!r} or {OVERWRITE!r}")
        if not (0 <= self.p <= 1 and 0 <= self.d <= 1):
            raise ValueError("p and d must lie in [0, 1]")

    @property
    def budget(self) -> int:
        return floor_frac(self.p, self.n)

    @property
    def window(self) -> int:
        return ceil_frac(self.d, self.n)


@dataclass(frozen=True)
class Action:
    kind: str  # "pass" | "add" | "overwrite"
    payload: np.ndarray | None = None


PASS = Action("pass")


def add(error) -> Action:
    return Action("add", np.asarray(error))


def overwrite(packet) -> Action:
    return Action("overwrite", np.asarray(packet))


@dataclass(frozen=True)
class AdversaryView:
    """What the adversary knows when packet ``step`` is on the wire."""

    step: int
    n: int
    window: int
    visible: Mapping[int, np.ndarray]
    budget_remaining: int
    packet_len: int
    field: PrimeField
    error_model: str


Adversary = Callable[[AdversaryView], Action]


@dataclass
class ChannelTrace:
    transmitted: np.ndarray
    received: np.ndarray
    corrupted: tuple[int, ...]
    actions: list[str]
    views: list[tuple[int, ...]]
    payload_digests: list[str] = field(default_factory=list)
    lag: int = 0
    jam_or_listen: bool = False

    @property
    def budget_used(self) -> int:
        return len(self.corrupted)

    def records(self):
        for i, (kind, seen, digest) in enumerate(zip(self.actions, self.views, self.payload_digests)):
            yield {
                "step": i,
                "action": kind,
                "payload_sha256": digest,
                "view_size": len(seen),
                "view_max": seen[-1] if seen else None,
                "view_bound": i - self.lag,
                "hidden": [j for j in self.corrupted if j <= i - self.lag] if self.jam_or_listen else [],
            }

    def write(self, fh) -> None:
        """One JSON record per step, for after-the-fact audits."""
        for rec in self.records():
            fh.write(json.dumps(rec) + "\n")


def _digest(payload: np.ndarray | None) -> str:
    if payload is None:
        return ""
    return hashlib.sha256(np.asarray(payload, dtype="<u8").tobytes()).hexdigest()


def run_channel(config: ChannelConfig, codeword: np.ndarray, adversary: Adversary, field: PrimeField) -> ChannelTrace:
    """Transmit ``codeword`` (one packet per row) past ``adversary``."""
    x = np.asarray(codeword)
    if x.ndim != 2 or x.shape[0] != config.n:
        raise ValueError(f"codeword must have {config.n} rows, got shape {x.shape}")
    n, packet_len = x.shape
    window = config.window
    budget = config.budget
    frozen = x.copy()
    frozen.setflags(write=False)
    y = x.copy()
    known: dict[int, np.ndarray] = {}
    proxy = MappingProxyType(known)
    corrupted: list[int] = []
    actions: list[str] = []
    views: list[tuple[int, ...]] = []
    digests: list[str] = []
    # jam-or-listen at zero delay: packet i is only learnt after choosing to listen
    lag = max(window, 1) if config.jam_or_listen else window

    for i in range(n):
        newest = i - lag
        if newest >= 0 and not (config.jam_or_listen and newest in corrupted):
            known[newest] = frozen[newest]
        views.append(tuple(sorted(known)))
        view = AdversaryView(i, n, window, proxy, budget - len(corrupted), packet_len, field, config.error_model)
        action = adversary(view)
        if action.kind != "pass" and len(corrupted) >= budget:
            raise PowerViolation(f"step {i}: budget of {budget} packets exhausted")
        _apply(config, field, y, i, action, packet_len)
        actions.append(action.kind)
        digests.append(_digest(action.payload))
        if action.kind != "pass":
            corrupted.append(i)

    return ChannelTrace(x.copy(), y, tuple(corrupted), actions, views, digests, lag, config.jam_or_listen)


def _apply(config: ChannelConfig, field: PrimeField, y: np.ndarray, i: int, action: Action, packet_len: int) -> None:
    if action.kind == "pass":
        return
    if action.kind not in ("add", "overwrite"):
        raise ModelViolation(f"step {i}: unknown action {action.kind!r}")
    # with no delay the two error models coincide
    if config.window > 0 and action.kind != {ADDITIVE: "add", OVERWRITE: "overwrite"}[config.error_model]:
        raise ModelViolation(f"step {i}: {action.kind} not allowed under the {config.error_model} model")
    payload = np.asarray(action.payload)
    if payload.shape != (packet_len,) or not field.contains(payload):
        raise ModelViolation(f"step {i}: payload must be {packet_len} reduced field elements")
    if action.kind == "add":
        y[i] = (y[i] + payload) % field.q
    else:
        y[i] = payload
