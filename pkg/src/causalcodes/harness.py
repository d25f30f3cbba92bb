"""Monte-Carlo experiments: encode, jam, decode, compare, aggregate."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np
from scipy.stats import binomtest

from .additive import AdditiveCodec
from .adversaries import AttackSpec
from .auth import verify_rows
from .baseline import BaselineRS
from .capacity import capacity_exact
from .channel import ChannelConfig, ChannelTrace, ChannelViolation, run_channel
from .erasure import DecodeFailure
from .overwrite import OverwriteCodec, hash_failures
from .params import Params, as_fraction

SEED_ENV = "CAUSALCODES_SEED"
CODECS = ("additive", "overwrite", "baseline_rs")
CSV_HEADER = ("trial", "success", "failure_kind", "budget_used", "candidates", "seed", "micros")


class AdversaryError(RuntimeError):
    """An adversary implementation violated the channel; the experiment is invalid."""


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


@dataclass(frozen=True)
class ExperimentConfig:
    params: Params
    codec: str = "additive"
    attack: AttackSpec = field(default_factory=AttackSpec)
    trials: int = 100
    seed: int = field(default_factory=default_seed)
    rate: float | None = None  # baseline_rs only
    eps: float = 0.0  # rate slack above capacity for the converse baseline
    delta: float = 0.0  # target error probability; reported against when positive
    jam_or_listen: bool = False
    record_timing: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.codec not in CODECS:
            raise ValueError(f"codec must be one of {CODECS}, got {self.codec!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        model = self.attack.error_model
        if model is not None and self.codec != "baseline_rs" and model != self.codec and self.params.window > 0:
            raise ValueError(f"{self.attack.kind} is a {model} attack but the {self.codec} codec faces {self.codec} errors")

    @property
    def error_model(self) -> str:
        if self.codec == "baseline_rs":
            return self.attack.error_model or "overwrite"
        return self.codec

    def channel(self) -> ChannelConfig:
        p = self.params
        return ChannelConfig(p.n, p.p, p.d, self.error_model, self.jam_or_listen)

    def build_codec(self):
        if self.codec == "additive":
            return AdditiveCodec(self.params)
        if self.codec == "overwrite":
            return OverwriteCodec(self.params)
        rate = self.rate
        if rate is None:
            # the converse target: just above capacity
            model = "overwrite" if self.params.d > 0 else "omniscient"
            rate = capacity_exact(model, self.params.p, self.params.d) + as_fraction(self.eps)
        return BaselineRS.at_rate(self.params.field, self.params.n, rate)

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self.params)
        out.update(
            codec=self.codec,
            attack=self.attack.to_dict(),
            trials=self.trials,
            seed=self.seed,
            rate=self.rate,
            eps=self.eps,
            delta=self.delta,
            jam_or_listen=self.jam_or_listen,
            record_timing=self.record_timing,
            workers=self.workers,
        )
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        data = dict(data)
        params = Params(**{k: data.pop(k) for k in ("n", "p", "d", "q", "s") if k in data})
        attack = AttackSpec.from_dict(data.pop("attack", {"kind": "passive"}))
        unknown = set(data) - {"codec", "trials", "seed", "rate", "eps", "delta", "jam_or_listen", "record_timing", "workers"}
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(params=params, attack=attack, **data)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class TrialReport:
    trial: int
    success: bool
    failure_kind: str  # "" | "wrong_message" | "decode_failure"
    budget_used: int
    candidates: int
    seed: int
    micros: int = 0
    ambiguous: bool | None = None
    tampered: int = 0  # packets whose data the jammer changed
    forged: int = 0  # of those, how many still authenticated
    hash_failures: int = 0

    def row(self) -> tuple:
        return (self.trial, int(self.success), self.failure_kind, self.budget_used, self.candidates, self.seed, self.micros)


def wilson(successes: int, trials: int) -> tuple[float, float]:
    ci = binomtest(successes, trials).proportion_ci(confidence_level=0.95, method="wilson")
    return float(ci.low), float(ci.high)


def three_sigma_ceiling(bound: float, trials: int) -> float:
    """``bound`` plus three binomial standard deviations at ``trials`` samples."""
    return bound + 3 * math.sqrt(bound * (1 - bound) / trials)


def three_sigma_floor(bound: float, trials: int) -> float:
    return bound - 3 * math.sqrt(bound * (1 - bound) / trials)


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    trials: list[TrialReport]
    bound_name: str = ""
    bound: float | None = None

    @property
    def errors(self) -> int:
        return sum(not t.success for t in self.trials)

    @property
    def error_rate(self) -> float:
        return self.errors / len(self.trials)

    def count(self, kind: str) -> int:
        return sum(t.failure_kind == kind for t in self.trials)

    @property
    def ambiguity_rate(self) -> float | None:
        flags = [t.ambiguous for t in self.trials]
        if any(f is None for f in flags):
            return None
        return sum(flags) / len(flags)

    @property
    def forgery_rate(self) -> float | None:
        tampered = sum(t.tampered for t in self.trials)
        if tampered == 0:
            return None
        return sum(t.forged for t in self.trials) / tampered

    def summary(self) -> dict[str, Any]:
        n = len(self.trials)
        out: dict[str, Any] = {
            "config": self.config.to_dict(),
            "trials": n,
            "successes": n - self.errors,
            "wrong_message": self.count("wrong_message"),
            "decode_failure": self.count("decode_failure"),
            "error_rate": self.error_rate,
            "error_rate_wilson95": list(wilson(self.errors, n)),
            "bound_name": self.bound_name,
            "bound": self.bound,
            "max_budget_used": max(t.budget_used for t in self.trials),
            "max_candidates": max(t.candidates for t in self.trials),
        }
        if self.config.delta > 0:
            out["within_delta"] = out["error_rate_wilson95"][1] <= self.config.delta
        if self.ambiguity_rate is not None:
            amb = sum(bool(t.ambiguous) for t in self.trials)
            out["ambiguity_rate"] = self.ambiguity_rate
            out["ambiguity_wilson95"] = list(wilson(amb, n))
        if self.forgery_rate is not None:
            out["tampered_packets"] = sum(t.tampered for t in self.trials)
            out["forged_packets"] = sum(t.forged for t in self.trials)
            out["forgery_rate"] = self.forgery_rate
        if self.config.codec == "overwrite":
            out["trials_with_hash_failures"] = sum(t.hash_failures > 0 for t in self.trials)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for t in self.trials:
            writer.writerow(t.row())
        buf.write("\n# summary\n")
        for line in json.dumps(self.summary(), indent=2, sort_keys=True).splitlines():
            buf.write(f"# {line}\n")
        return buf.getvalue()

    def write(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


def trial_seed(seed: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, trial]).generate_state(1, np.uint64)[0])


def run_trial(config: ExperimentConfig, codec, trial: int) -> TrialReport:
    return traced_trial(config, codec, trial)[0]


def traced_trial(config: ExperimentConfig, codec, trial: int) -> tuple[TrialReport, ChannelTrace]:
    """One trial, also returning the channel trace for audits."""
    seed = trial_seed(config.seed, trial)
    msg_ss, key_ss, adv_ss = np.random.SeedSequence(seed).spawn(3)
    fld = config.params.field
    chan = config.channel()
    lanes = codec.layout.data_len if hasattr(codec, "layout") else 1

    start = time.perf_counter_ns()
    message = fld.random(np.random.default_rng(msg_ss), (codec.k, lanes))
    x = codec.encode(message, np.random.default_rng(key_ss))
    adversary = config.attack.build(codec, chan, np.random.default_rng(adv_ss))
    try:
        trace = run_channel(chan, x, adversary, fld)
    except ChannelViolation as exc:
        raise AdversaryError(f"trial {trial}: the {config.attack.kind} adversary broke the channel rules: {exc}") from exc
    candidates = 0
    failure = ""
    try:
        if isinstance(codec, OverwriteCodec):
            decoded, stats = codec.decode_verbose(trace.received)
            candidates = stats.examined
        else:
            decoded = codec.decode(trace.received)
    except DecodeFailure as exc:
        failure = "decode_failure"
        candidates = exc.candidates
    else:
        if not np.array_equal(decoded, message):
            failure = "wrong_message"
    micros = (time.perf_counter_ns() - start) // 1000 if config.record_timing else 0

    report = TrialReport(trial, failure == "", failure, trace.budget_used, candidates, seed, micros)
    y = trace.received
    if isinstance(codec, BaselineRS):
        report.ambiguous = codec.ambiguous(y, chan.budget)
    elif isinstance(codec, AdditiveCodec):
        dl = codec.layout.data_len
        changed = np.any(x[:, :dl] != y[:, :dl], axis=1)
        passed = verify_rows(fld, codec.layout, y)
        report.tampered = int(changed.sum())
        report.forged = int((changed & passed).sum())
    elif isinstance(codec, OverwriteCodec):
        report.hash_failures = len(hash_failures(codec.layout, x, y, codec.graph(y).consistent, codec.window))
    return report, trace


def _run_chunk(config_dict: dict, trials: list[int]) -> list[TrialReport]:
    config = ExperimentConfig.from_dict(config_dict)
    codec = config.build_codec()
    return [run_trial(config, codec, t) for t in trials]


def error_bound(config: ExperimentConfig) -> tuple[str, float | None]:
    n, q = config.params.n, config.params.q
    if config.codec == "additive":
        return "n/q", n / q
    if config.codec == "overwrite":
        return "n^2/q", n * n / q
    return "", None


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run all trials; identical config and seed give identical reports."""
    indices = list(range(config.trials))
    if config.workers > 1:
        chunks = [indices[i :: config.workers] for i in range(config.workers)]
        with ProcessPoolExecutor(config.workers) as pool:
            parts = pool.map(_run_chunk, [config.to_dict()] * len(chunks), chunks)
            trials = sorted((t for part in parts for t in part), key=lambda t: t.trial)
    else:
        codec = config.build_codec()
        trials = [run_trial(config, codec, t) for t in indices]
    name, bound = error_bound(config)
    return ExperimentReport(config, trials, name, bound)
