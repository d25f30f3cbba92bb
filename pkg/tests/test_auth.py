import itertools

import numpy as np
import pytest

from causalcodes.auth import (
    AdditiveLayout,
    PairwiseLayout,
    consistency_matrix,
    hash_block,
    mutually_consistent,
    signature_matrix,
    verify_rows,
    verify_single,
)
from causalcodes.field import field_for


def test_hash_examples(f17):
    assert hash_block(f17, np.array([1, 0, 0, 1]), np.array([3, 5])).tolist() == [3, 5]
    assert hash_block(f17, np.zeros(4, dtype=np.int64), np.array([3, 5])).tolist() == [0, 0]
    F5 = field_for(5)
    assert hash_block(F5, np.array([1, 2, 3, 4]), np.array([1, 1])).tolist() == [3, 2]


def test_hash_shape_checked(f17):
    with pytest.raises(ValueError):
        hash_block(f17, np.arange(5), np.array([1, 2]))


def test_rank_bound_exhaustive_q5():
    # for every nonzero change and every target, at most q^(s-1) keys map onto it
    q, s = 5, 2
    keys = list(itertools.product(range(q), repeat=s))
    worst = 0
    for entries in itertools.product(range(q), repeat=s * s):
        if not any(entries):
            continue
        counts = {}
        for r in keys:
            img = tuple((entries[2 * a] * r[0] + entries[2 * a + 1] * r[1]) % q for a in range(s))
            counts[img] = counts.get(img, 0) + 1
        worst = max(worst, max(counts.values()))
    assert worst == q ** (s - 1)


def test_forgery_acceptance_count_matches_library():
    q, s = 5, 2
    F = field_for(q)
    rng = np.random.default_rng(7)
    layout = AdditiveLayout(s)
    keys = np.array(list(itertools.product(range(q), repeat=s)))
    for _ in range(100):
        w = F.random(rng, s * s)
        dw = F.random(rng, s * s)
        if not dw.any():
            dw[0] = 1
        dr, dsig = F.random(rng, s), F.random(rng, s)
        sent = np.stack([layout.assemble(w, r, hash_block(F, w, r)) for r in keys])
        received = (sent + layout.assemble(dw, dr, dsig)) % q
        accepted = int(verify_rows(F, layout, received).sum())
        # brute-force oracle with python ints
        brute = 0
        for r in keys:
            W2 = (w + dw) % q
            r2 = (r + dr) % q
            sig = [(W2[2 * a] * r2[0] + W2[2 * a + 1] * r2[1]) % q for a in range(s)]
            target = [(w[2 * a] * r[0] + w[2 * a + 1] * r[1] + dsig[a]) % q for a in range(s)]
            brute += sig == target
        assert accepted == brute <= q ** (s - 1)


def test_verify_single_and_rows_agree(f17, rng):
    layout = AdditiveLayout(2)
    w, r = f17.random(rng, (6, 4)), f17.random(rng, (6, 2))
    sig = np.stack([hash_block(f17, w[i], r[i]) for i in range(6)])
    rows = layout.assemble(w, r, sig)
    rows[2, 0] = (rows[2, 0] + 1) % 17
    rows[4, 5] = (rows[4, 5] + 3) % 17
    flags = verify_rows(f17, layout, rows)
    assert flags.tolist() == [verify_single(f17, layout.unpack(row)) for row in rows]
    assert flags.tolist() == [True, True, False, True, False, True]


def test_layout_round_trip(f17, rng):
    layout = PairwiseLayout(s=2, n=5)
    assert layout.packet_len == 4 + 2 * 5 * 2
    w, keys, sigs = f17.random(rng, (5, 4)), f17.random(rng, (5, 5, 2)), f17.random(rng, (5, 5, 2))
    rows = layout.assemble(w, keys, sigs)
    w2, k2, s2 = layout.split(rows)
    assert np.array_equal(w, w2) and np.array_equal(keys, k2) and np.array_equal(sigs, s2)


def _pairwise_word(F, layout, rng):
    w = F.random(rng, (layout.n, layout.data_len))
    keys = F.random(rng, (layout.n, layout.n, layout.s))
    return layout.assemble(w, keys, signature_matrix(F, layout, w, keys))


def test_signature_matrix_definition(f17, rng):
    layout = PairwiseLayout(2, 4)
    w = f17.random(rng, (4, 4))
    keys = f17.random(rng, (4, 4, 2))
    sigs = signature_matrix(f17, layout, w, keys)
    for i, j in itertools.product(range(4), repeat=2):
        assert np.array_equal(sigs[i, j], hash_block(f17, w[j], keys[i, j]))


def test_consistency_matrix_matches_pairwise_checks(f17, rng):
    layout = PairwiseLayout(2, 6)
    rows = _pairwise_word(f17, layout, rng)
    assert consistency_matrix(f17, layout, rows).all()
    rows[3, :4] = f17.random(rng, 4)
    mat = consistency_matrix(f17, layout, rows)
    packets = [layout.unpack(r) for r in rows]
    for i, j in itertools.permutations(range(6), 2):
        assert mat[i, j] == mutually_consistent(f17, packets[i], packets[j], i, j)
    assert np.array_equal(mat, mat.T)


def test_mutual_consistency_rejects_self(f17, rng):
    layout = PairwiseLayout(2, 3)
    p = layout.unpack(_pairwise_word(f17, layout, rng)[0])
    with pytest.raises(ValueError):
        mutually_consistent(f17, p, p, 0, 0)


def _band(rate, trials):
    return rate + 3 * np.sqrt(rate * (1 - rate) / trials)


def test_changed_data_caught_by_unseen_key_q17():
    # an intact later packet i holds a key for j the jammer never saw
    F = field_for(17)
    layout = PairwiseLayout(2, 4)
    rng = np.random.default_rng(3)
    trials, passed = 5000, 0
    for _ in range(trials):
        rows = _pairwise_word(F, layout, rng)
        forged = rows[1].copy()
        dw = F.random(rng, 4)
        if not dw.any():
            dw[0] = 1
        forged[:4] = (forged[:4] + dw) % 17
        # the jammer re-signs everything it can: its own signatures of the others
        rows[1] = forged
        mat = consistency_matrix(F, layout, rows)
        passed += bool(mat[3, 1])
    assert passed / trials <= _band(1 / 17, trials)


def test_one_sided_overwrite_caught_within_window_q17():
    # a fully replaced packet next to an intact one: the intact one's key for it is unknown
    F = field_for(17)
    layout = PairwiseLayout(2, 4)
    rng = np.random.default_rng(4)
    trials, passed = 5000, 0
    for _ in range(trials):
        rows = _pairwise_word(F, layout, rng)
        fake = _pairwise_word(F, layout, rng)[2]
        fake_w = fake[:4]
        # consistent on the jammer's side: it signs the packets it has seen correctly
        _, fk, _ = layout.split(fake)
        fsig = signature_matrix(F, layout, rows[:, :4], np.broadcast_to(fk, (4, 4, 2)))[0]
        rows[2] = layout.assemble(fake_w, fk, fsig)
        passed += bool(consistency_matrix(F, layout, rows)[1, 2])
    assert passed / trials <= _band(1 / 17, trials)
