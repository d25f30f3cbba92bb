import numpy as np
import pytest
from scipy.stats import chisquare

from causalcodes.additive import AdditiveCodec
from causalcodes.adversaries import AttackSpec, WaitAndAttack
from causalcodes.baseline import BaselineRS
from causalcodes.channel import ChannelConfig, run_channel
from causalcodes.field import field_for
from causalcodes.overwrite import OverwriteCodec
from causalcodes.params import Params


def transmit(spec, code, cfg, rng, x=None):
    x = code.sample_codeword(rng) if x is None else x
    trace = run_channel(cfg, x, spec.build(code, cfg, rng), code.field)
    return x, trace


def test_random_add_prefix_positions(rng):
    code = AdditiveCodec(Params(n=8, p=0.25, d=0.125, q=17))
    cfg = ChannelConfig(8, 0.25, 0.125, "additive")
    _, trace = transmit(AttackSpec("random_add_prefix"), code, cfg, rng)
    assert trace.corrupted == (0, 1)


def test_random_add_prefix_output_is_uniform():
    F5 = field_for(5)
    code = AdditiveCodec(Params(n=4, p=0.5, d=0.25, q=5))
    cfg = ChannelConfig(4, 0.5, 0.25, "additive")
    rng = np.random.default_rng(11)
    counts = np.zeros(5, dtype=int)
    for _ in range(400):
        _, trace = transmit(AttackSpec("random_add_prefix"), code, cfg, rng)
        counts += np.bincount(trace.received[:2].ravel(), minlength=5)
    assert F5.q == 5
    assert chisquare(counts).pvalue > 1e-3


def test_block_overwrite_variants(rng):
    code = OverwriteCodec(Params(n=16, p=0.25, d=0.125, q=17))
    cfg = ChannelConfig(16, 0.25, 0.125)
    x = code.sample_codeword(rng)
    _, trace = transmit(AttackSpec("random_block_overwrite"), code, cfg, rng, x)
    assert trace.corrupted == (6, 7, 8, 9)
    _, trace = transmit(AttackSpec("random_block_overwrite", {"length": 0}), code, cfg, rng, x)
    assert trace.corrupted == () and np.array_equal(trace.received, x)
    # a block at the start spends the budget on the same packets as the prefix attack
    a = transmit(AttackSpec("random_block_overwrite", {"start": 0, "length": 3}), code, cfg, np.random.default_rng(5), x)[1]
    b = transmit(AttackSpec("random_overwrite_prefix", {"length": 3}), code, cfg, np.random.default_rng(5), x)[1]
    assert a.corrupted == b.corrupted == (0, 1, 2)
    assert np.array_equal(a.received, b.received)
    with pytest.raises(ValueError):
        AttackSpec("random_block_overwrite", {"length": 5}).build(code, cfg, rng)


def test_block_overwrite_splits_graph(rng):
    code = OverwriteCodec(Params(n=16, p=0.25, d=0.125, q=2**31 - 1))
    cfg = ChannelConfig(16, 0.25, 0.125)
    for _ in range(10):
        _, trace = transmit(AttackSpec("random_block_overwrite", {"length": 2}), code, cfg, rng)
        assert len(code.graph(trace.received).components) >= 2


def test_halves_attack(rng):
    code = BaselineRS(field_for(17), 8, 2)
    cfg = ChannelConfig(8, 0.5, 0.0)
    spans = set()
    for _ in range(30):
        x = code.sample_codeword(rng)
        attack = AttackSpec("halves_attack").build(code, cfg, rng)
        trace = run_channel(cfg, x, attack, code.field)
        assert trace.budget_used == 4 <= cfg.budget
        spans.add(trace.corrupted)
        # half of y is x and half is the decoy, so both are within n/2
        assert code.ambiguous(trace.received, cfg.budget) == (not np.array_equal(attack.decoy, x))
    assert spans == {(0, 1, 2, 3), (4, 5, 6, 7)}


def test_halves_attack_collision_is_not_ambiguous(rng):
    code = BaselineRS(field_for(17), 8, 2)
    cfg = ChannelConfig(8, 0.5, 0.0)
    x = code.sample_codeword(rng)
    attack = AttackSpec("halves_attack").build(code, cfg, rng)
    attack.decoy = x.copy()
    trace = run_channel(cfg, x, attack, code.field)
    assert np.array_equal(trace.received, x)
    assert not code.ambiguous(trace.received, cfg.budget)


def test_wait_and_attack_phases(rng):
    code = BaselineRS(field_for(17), 8, 4)
    att = WaitAndAttack(code, 0.375, 0.125, rng)
    assert (att.listen_end, att.scramble_end) == (3, 4)
    zero = WaitAndAttack(code, 0.375, 0.0, rng)
    assert zero.listen_end == zero.scramble_end == 2
    with pytest.raises(ValueError):
        WaitAndAttack(code, 0.125, 0.25, rng)


def test_wait_and_attack_decoy_repeats_heard_prefix(rng):
    code = BaselineRS(field_for(17), 8, 4)
    cfg = ChannelConfig(8, 0.375, 0.125)
    for _ in range(20):
        att = AttackSpec("wait_and_attack").build(code, cfg, rng)
        x = code.sample_codeword(rng)
        trace = run_channel(cfg, x, att, code.field)
        assert np.array_equal(att.decoy[: att.listen_end], x[: att.listen_end])
        assert trace.budget_used <= cfg.budget
        assert set(trace.corrupted) >= set(range(att.listen_end, att.scramble_end))


def test_replay_adversaries_respect_budget(rng):
    add_code = AdditiveCodec(Params(n=16, p=0.25, d=0.125))
    cfg = ChannelConfig(16, 0.25, 0.125, "additive")
    for _ in range(10):
        _, trace = transmit(AttackSpec("replay_add"), add_code, cfg, rng)
        assert trace.budget_used == 4
        assert min(trace.corrupted) >= cfg.window
    ow_code = OverwriteCodec(Params(n=16, p=0.375, d=0.25))
    cfg = ChannelConfig(16, 0.375, 0.25)
    x, trace = transmit(AttackSpec("replay_overwrite"), ow_code, cfg, rng)
    for i in trace.corrupted:
        assert any(np.array_equal(trace.received[i], x[j]) for j in range(i - cfg.window + 1))


def test_attack_spec_serialization():
    spec = AttackSpec("random_block_overwrite", {"start": "random", "length": 2})
    assert AttackSpec.from_dict(spec.to_dict()) == spec
    assert spec.error_model == "overwrite"
    assert AttackSpec("replay_add").error_model == "additive"
    assert AttackSpec().error_model is None
    with pytest.raises(ValueError):
        AttackSpec("nope")
