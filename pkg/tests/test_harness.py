import json

import numpy as np
import pytest

from causalcodes.adversaries import AttackSpec
from causalcodes.harness import (
    CSV_HEADER,
    AdversaryError,
    ExperimentConfig,
    run_experiment,
    traced_trial,
    trial_seed,
    wilson,
)
from causalcodes.params import Params


def cfg(**kw):
    base = dict(n=16, p=0.25, d=0.125, q=17, codec="additive", attack={"kind": "passive"}, trials=20, seed=3)
    base.update(kw)
    return ExperimentConfig.from_dict(base)


@pytest.mark.parametrize("codec,extra", [("additive", {}), ("overwrite", {}), ("baseline_rs", {"n": 8, "rate": 0.5})])
def test_passive_has_no_errors(codec, extra):
    report = run_experiment(cfg(codec=codec, trials=100, **extra))
    assert report.errors == 0
    assert report.summary()["successes"] == 100


def test_additive_random_prefix_large_field():
    report = run_experiment(cfg(q=2**31 - 1, attack={"kind": "random_add_prefix"}, trials=1000))
    assert report.errors == 0
    assert report.summary()["bound"] == pytest.approx(16 / (2**31 - 1))


def test_converse_zero_delay():
    report = run_experiment(
        cfg(n=8, p=0.375, d=0.0, codec="baseline_rs", eps=0.125, attack={"kind": "wait_and_attack"}, trials=300)
    )
    assert report.ambiguity_rate >= 0.25


def test_counts_add_up():
    report = run_experiment(cfg(q=17, attack={"kind": "replay_add"}, trials=200))
    s = report.summary()
    assert s["successes"] + s["wrong_message"] + s["decode_failure"] == 200


def test_csv_format_and_determinism(tmp_path):
    c = cfg(codec="overwrite", p=0.375, d=0.25, attack={"kind": "random_block_overwrite"}, trials=15)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_experiment(c).write(a)
    run_experiment(c).write(b)
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len([l for l in lines[1:] if l and not l.startswith("#")]) == 15
    summary = json.loads("\n".join(l[2:] for l in lines if l.startswith("# ") and l != "# summary"))
    assert summary["trials"] == 15


def test_seed_changes_report():
    a = run_experiment(cfg(attack={"kind": "random_add_prefix"}, seed=1)).to_csv()
    b = run_experiment(cfg(attack={"kind": "random_add_prefix"}, seed=2)).to_csv()
    assert a != b


def test_workers_do_not_change_results():
    c = cfg(attack={"kind": "random_add_prefix"}, trials=12)
    parallel = ExperimentConfig.from_dict({**c.to_dict(), "workers": 2})
    assert [t.row() for t in run_experiment(c).trials] == [t.row() for t in run_experiment(parallel).trials]


def test_timing_only_when_requested():
    assert all(t.micros == 0 for t in run_experiment(cfg()).trials)
    assert any(t.micros > 0 for t in run_experiment(cfg(record_timing=True)).trials)


def test_trial_seeds_are_distinct():
    assert len({trial_seed(0, t) for t in range(1000)}) == 1000


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("CAUSALCODES_SEED", "77")
    c = ExperimentConfig(Params(16, 0.25, 0.125, 17))
    assert c.seed == 77


def test_config_validation():
    with pytest.raises(ValueError):
        cfg(trials=0)
    with pytest.raises(ValueError):
        cfg(codec="nope")
    with pytest.raises(ValueError):
        cfg(attack={"kind": "replay_overwrite"})  # overwrite attack vs additive codec
    with pytest.raises(ValueError):
        cfg(colour="blue")


def test_config_round_trip(tmp_path):
    c = cfg(codec="overwrite", p=0.375, d=0.25, attack={"kind": "random_block_overwrite", "start": "random"})
    path = tmp_path / "c.json"
    path.write_text(json.dumps(c.to_dict()))
    assert ExperimentConfig.load(path) == c


class Cheater:
    def __call__(self, view):
        from causalcodes.channel import overwrite

        return overwrite(np.zeros(view.packet_len, dtype=np.int64))


def test_channel_violation_is_an_experiment_error(monkeypatch):
    c = cfg(attack={"kind": "random_add_prefix"})
    monkeypatch.setattr(AttackSpec, "build", lambda self, code, config, rng: Cheater())
    with pytest.raises(AdversaryError):
        run_experiment(c)


def test_traced_trial_exposes_trace():
    c = cfg(attack={"kind": "random_add_prefix"})
    report, trace = traced_trial(c, c.build_codec(), 0)
    assert report.budget_used == trace.budget_used == 4


def test_wilson_interval():
    lo, hi = wilson(0, 100)
    assert lo == 0 and 0.03 < hi < 0.04
    lo, hi = wilson(50, 100)
    assert lo < 0.5 < hi
