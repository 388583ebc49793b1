"""Acceptance criteria, one test per criterion, one printed line each.

Known caveat, kept faithful rather than patched around: the published
ablation table's wallhack committee rows print OEI values (4.143 / 1.946)
that are inconsistent with the very same rows' printed recall/NPV/counts
and the OEI definition; every other row reproduces exactly (as does the
neighboring optimizer-settings table). Criterion 1 checks all 16 rows as
stated and therefore fails on those two values. See the repository notes.
"""

from __future__ import annotations

import sys
import time

import numpy as np
import pytest

from hawk.errors import InfeasibleConstraint
from hawk.exspc import ExSpcConfig
from hawk.learn import (
    Dense,
    ELU,
    LSTMLayer,
    LuongAttention,
    Sigmoid,
    grad_check,
    weighted_bce,
)
from hawk.metrics import ConfusionCounts, auc_roc, metrics
from hawk.mvin import ObjectiveSpec, optimize
from hawk.pipeline import PipelineConfig, build_samples, train_from_pairs
from hawk.replay import CheatProfile, generate_synthetic_match
from hawk.replay.parse import serialize_match
from hawk.reports import robustness_sweep, sweep_csv
from hawk.revpov import RevPovConfig, majority_vote, multi_subsample
from hawk.revstats import RevStatsConfig
from hawk.features.structured import feature_vector

from .conftest import make_corpus
from .oracle_features import oracle_feature_vector
from .test_mvin import rescan_best


def report(name: str, ok: bool, detail: str = ""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f" :: {detail}"
    print(line, file=sys.__stderr__, flush=True)


def acceptance_config(seed: int, r: float = 0.85) -> PipelineConfig:
    cfg = PipelineConfig(seed=seed)
    cfg.revpov = RevPovConfig(
        hidden=16, dense_dim=16, out_dim=8, max_len=96,
        encoder_epochs=2, forest_trees=60, forest_depth=10,
    )
    cfg.revstats = RevStatsConfig()
    cfg.exspc = ExSpcConfig(
        epochs=6, shrink_dim=16, reduce_hidden=32, reduce_out=16,
        deepen_hidden=16, deepen_out=8, head_hidden=8,
    )
    cfg.objective = ObjectiveSpec(kind="accuracy-subject-to-recall", r=r)
    return cfg


# === criterion 1: OEI fidelity over all 16 ablation rows =====================

TABLE_ROWS = [
    # cheat, split, system, tp, tn, fp, fn, N, accuracy, recall, npv, oei
    ("aimbot", "val", "revpov", 458, 4796, 2901, 406, 8561, 0.614, 0.530, 0.922, 1.246),
    ("aimbot", "val", "revstats", 453, 7290, 407, 411, 8561, 0.904, 0.524, 0.947, 4.941),
    ("aimbot", "val", "exspc", 553, 6187, 1510, 311, 8561, 0.787, 0.640, 0.952, 2.529),
    ("aimbot", "val", "hawk", 614, 5803, 1894, 250, 8561, 0.750, 0.711, 0.959, 2.326),
    ("aimbot", "test", "revpov", 481, 5088, 3075, 403, 9047, 0.616, 0.544, 0.927, 1.283),
    ("aimbot", "test", "revstats", 566, 6797, 1366, 318, 9047, 0.814, 0.640, 0.955, 2.864),
    ("aimbot", "test", "exspc", 558, 6616, 1547, 326, 9047, 0.793, 0.631, 0.953, 2.586),
    ("aimbot", "test", "hawk", 642, 5837, 2326, 242, 9047, 0.716, 0.726, 0.960, 2.126),
    ("wallhack", "val", "revpov", 573, 6081, 2664, 394, 9712, 0.685, 0.593, 0.939, 1.670),
    ("wallhack", "val", "revstats", 604, 8241, 504, 363, 9712, 0.911, 0.625, 0.958, 4.143),
    ("wallhack", "val", "exspc", 760, 7258, 1487, 207, 9712, 0.826, 0.786, 0.972, 3.303),
    ("wallhack", "val", "hawk", 798, 7033, 1712, 169, 9712, 0.806, 0.825, 0.977, 3.118),
    ("wallhack", "test", "revpov", 627, 6364, 2885, 398, 10274, 0.680, 0.612, 0.941, 1.684),
    ("wallhack", "test", "revstats", 855, 6988, 2261, 170, 10274, 0.763, 0.834, 0.976, 1.946),
    ("wallhack", "test", "exspc", 501, 8484, 765, 524, 10274, 0.875, 0.489, 0.942, 3.736),
    ("wallhack", "test", "hawk", 869, 6902, 2347, 156, 10274, 0.756, 0.848, 0.978, 2.649),
]


def test_criterion_1_oei_fidelity():
    failures = []
    for cheat, split, system, tp, tn, fp, fn, n, acc, rec, npv, oei in TABLE_ROWS:
        c = ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn)
        m = metrics(c, n_total=n)
        assert c.n == n
        for key, printed, tol in (
            ("accuracy", acc, 1e-3),
            ("recall", rec, 1e-3),
            ("npv", npv, 1e-3),
            ("oei", oei, 1e-2),
        ):
            if abs(m[key] - printed) > tol:
                failures.append(
                    f"{cheat}/{split}/{system} {key}: computed {m[key]:.4f}, printed {printed}"
                )
    ok = not failures
    report(
        "1 OEI fidelity (16 ablation rows, acc/recall/NPV +-0.001, OEI +-0.01)",
        ok,
        "; ".join(failures) if failures else "16/16 rows reproduce",
    )
    assert ok, (
        "printed OEI is stale for these rows (their own recall/NPV/counts imply "
        "a different value; all other published rows reproduce): " + "; ".join(failures)
    )


# === criterion 2: structured features vs brute-force oracle ==================

def test_criterion_2_structured_feature_oracle():
    start = time.time()
    rng = np.random.default_rng(2024)
    kinds = ("honest", "aimbot", "wallhack", "boosting-like")
    checked = 0
    worst = 0.0
    for i in range(200):
        n_players = int(rng.integers(1, 4)) * 2  # 2, 4 or 6 players
        profiles = []
        for j in range(n_players):
            if j == 0:
                profiles.append(CheatProfile(kind=kinds[int(rng.integers(0, 4))],
                                             sophistication=float(rng.random())))
            elif j == 1:
                profiles.append(CheatProfile(kind=kinds[int(rng.integers(0, 4))]))
            else:
                profiles.append(CheatProfile())
        match, _ = generate_synthetic_match(
            profiles, rounds=int(rng.integers(1, 4)), seed=int(rng.integers(0, 2**31)),
            frame_stride=32, play_seconds=(8.0, 12.0),
        )
        for sid in match.steam_ids:
            got = feature_vector(match, sid)
            want_v, want_m = oracle_feature_vector(match, sid)
            np.testing.assert_allclose(got.values, np.asarray(want_v), rtol=1e-12, atol=1e-12)
            assert list(got.mask) == want_m
            denom = np.maximum(np.abs(want_v), 1.0)
            worst = max(worst, float(np.max(np.abs(got.values - np.asarray(want_v)) / denom)))
            checked += 1
    elapsed = time.time() - start
    ok = elapsed < 30.0
    report(
        "2 structured-feature oracle (200 matches, rel err <= 1e-12, < 30 s)",
        ok,
        f"{checked} player-vectors, worst rel err {worst:.2e}, {elapsed:.1f}s",
    )
    assert ok, f"oracle sweep took {elapsed:.1f}s (budget 30s)"


# === criterion 3: gradient suite =============================================

def test_criterion_3_gradient_suite():
    start = time.time()
    rng = np.random.default_rng(33)
    worst = 0.0
    cases = 0

    def check(value):
        nonlocal worst, cases
        worst = max(worst, value)
        cases += 1
        assert value <= 1e-4, value

    for trial in range(10):
        seed = int(rng.integers(0, 2**31))
        r = np.random.default_rng(seed)

        # dense + sigmoid + weighted BCE
        gen = np.random.Generator(np.random.PCG64(seed))
        dense = Dense(gen, int(r.integers(2, 7)), 1)
        sig = Sigmoid()
        x = r.normal(size=dense.w.value.shape[0])
        y = np.asarray([float(r.integers(0, 2))])

        def f_dense():
            p = sig.forward(dense.forward(x))
            loss, dp = weighted_bce(p, y, pos_weight=9.0)
            dense.backward(sig.backward(dp))
            return loss

        check(grad_check(f_dense, dense.parameters()))

        # ELU chain
        d1 = Dense(gen, 4, 6)
        act = ELU()
        d2 = Dense(gen, 6, 1)
        x2 = r.normal(size=4)
        tgt = r.normal()

        def f_elu():
            out = d2.forward(act.forward(d1.forward(x2)))
            diff = out[0] - tgt
            d1.backward(act.backward(d2.backward(np.asarray([diff]))))
            return float(0.5 * diff * diff)

        check(grad_check(f_elu, d1.parameters() + d2.parameters()))

        # LSTM cell over a short sequence
        lstm = LSTMLayer(gen, 3, 4)
        seq = r.normal(size=(int(r.integers(2, 6)), 3))
        tgt_seq = r.normal(size=(seq.shape[0], 4))

        def f_lstm():
            h = lstm.forward(seq)
            lstm.backward(h - tgt_seq)
            return float(0.5 * np.sum((h - tgt_seq) ** 2))

        check(grad_check(f_lstm, lstm.parameters()))

        # attention block
        att = LuongAttention(gen, 4)
        hseq = r.normal(size=(int(r.integers(2, 7)), 4))
        tgt_att = r.normal(size=hseq.shape)

        def f_att():
            a = att.forward(hseq)
            att.backward(a - tgt_att)
            return float(0.5 * np.sum((a - tgt_att) ** 2))

        check(grad_check(f_att, att.parameters()))

        # weighted BCE through a sigmoid probe
        probe = Dense(gen, 3, 1)
        sig2 = Sigmoid()
        x3 = r.normal(size=3)
        y3 = np.asarray([1.0])
        pos_weight = float(r.integers(1, 10))

        def f_bce():
            p = sig2.forward(probe.forward(x3))
            loss, dp = weighted_bce(p, y3, pos_weight=pos_weight)
            probe.backward(sig2.backward(dp))
            return loss

        check(grad_check(f_bce, probe.parameters()))

    elapsed = time.time() - start
    ok = elapsed < 60.0 and cases == 50
    report(
        "3 gradient suite (50 instances, max rel err <= 1e-4, < 60 s)",
        ok,
        f"{cases} checks, worst {worst:.2e}, {elapsed:.1f}s",
    )
    assert ok


# === criterion 4: voting oracles =============================================

def test_criterion_4_voting_oracles():
    rng = np.random.default_rng(44)
    for _ in range(1000):
        votes = rng.integers(0, 2, size=9)
        brute = int((votes == 1).sum() > (votes == 0).sum())
        assert majority_vote(votes) == brute
    for _ in range(1000):
        tensor = rng.integers(0, 2, size=(7, 9))
        nested = majority_vote([majority_vote(row) for row in tensor])
        kind_votes = [int((row == 1).sum() > (row == 0).sum()) for row in tensor]
        brute = int(sum(kind_votes) > 7 - sum(kind_votes))
        assert nested == brute
    report("4 voting oracles (1000 forest + 1000 committee tensors, exact)", True,
           "2000/2000 agree")


# === criterion 5: subsampling balance ========================================

def test_criterion_5_subsampling_balance():
    labels = np.asarray([0] * 900 + [1] * 100)
    sets = multi_subsample(labels, seed=5)
    ok = len(sets) == 9
    honest_seen: set[int] = set()
    for idx in sets:
        pos = int((labels[idx] == 1).sum())
        neg = int((labels[idx] == 0).sum())
        ok = ok and pos == 100 and neg == 100
        honest = {int(i) for i in idx if labels[i] == 0}
        ok = ok and not (honest & honest_seen)
        honest_seen |= honest
    report("5 subsampling balance (900/100 -> 9 x 100/100, honest disjoint)", ok,
           f"{len(sets)} sets, {len(honest_seen)} distinct honest")
    assert ok


# === criterion 6: optimizer optimality =======================================

def test_criterion_6_optimizer_optimality():
    rng = np.random.default_rng(66)
    objectives = [
        ObjectiveSpec(kind="f1"),
        ObjectiveSpec(kind="accuracy"),
        ObjectiveSpec(kind="auc"),
        ObjectiveSpec(kind="accuracy-subject-to-recall", r=0.7),
    ]
    beaten = 0
    infeasible_ok = True
    for trial in range(100):
        n = int(rng.integers(20, 120))
        labels = rng.integers(0, 2, size=n).astype(bool)
        labels[0], labels[1] = True, False
        triples = (rng.random((n, 3)) < rng.random(3)).astype(float)
        for j in range(3):
            agree = rng.random(n) > rng.uniform(0.1, 0.4)
            triples[:, j] = np.where(agree, labels, ~labels).astype(float)
        objective = objectives[trial % len(objectives)]
        try:
            model = optimize(triples, labels, objective)
        except InfeasibleConstraint:
            infeasible_ok = infeasible_ok and rescan_best(triples, labels, objective) is None
            continue
        best = rescan_best(triples, labels, objective)
        if model.validation_metrics["objectiveValue"] < best - 1e-12:
            beaten += 1
        if objective.kind == "accuracy-subject-to-recall":
            assert model.validation_metrics["recall"] >= objective.r
    with pytest.raises(InfeasibleConstraint):
        labels = np.asarray([True, False] * 10)
        optimize(np.ones((20, 3)), labels, ObjectiveSpec(kind="accuracy-subject-to-recall", r=1.01))
    ok = beaten == 0 and infeasible_ok
    report("6 optimizer optimality (100 datasets, never beaten by re-scan)", ok,
           f"beaten {beaten}/100")
    assert ok


# === criterion 7: AUC oracle ==================================================

def test_criterion_7_auc_oracle():
    rng = np.random.default_rng(77)
    for trial in range(200):
        n = int(rng.integers(4, 201))
        labels = rng.integers(0, 2, size=n)
        if labels.all() or not labels.any():
            labels[0] = 1 - labels[0]
        scores = np.round(rng.random(n), 2)
        pos = scores[labels == 1]
        neg = scores[labels == 0]
        wins = (pos[:, None] > neg[None, :]).sum()
        ties = (pos[:, None] == neg[None, :]).sum()
        oracle = (wins + 0.5 * ties) / (len(pos) * len(neg))
        assert auc_roc(scores, labels) == oracle
    report("7 AUC oracle (200 random sets vs pairwise, exact)", True, "200/200 equal")


# === criteria 8-10 share the expensive desk-scale corpora ====================

@pytest.fixture(scope="module")
def blatant_run():
    corpus = make_corpus(120, seed=71, players=10, rounds=4)
    cfg = acceptance_config(seed=17, r=0.85)
    start = time.time()
    bundle, samples = train_from_pairs(corpus, cfg)
    return bundle, samples, time.time() - start


def test_criterion_8_end_to_end(blatant_run):
    bundle, samples, train_seconds = blatant_run
    ev = bundle.evaluate(samples["test"])
    recall = ev["hawk"]["recall"]
    accuracy = ev["hawk"]["accuracy"]
    blatant_ok = recall >= 0.85 and accuracy >= 0.85

    # cautious corpus: fuse with the recall bound set at the best subsystem's
    # validation recall, then compare recalls on the held-out test split
    start = time.time()
    corpus = make_corpus(120, seed=72, players=10, rounds=4, sophistication=0.8)
    cfg = acceptance_config(seed=18, r=0.5)
    bundle_c, samples_c = train_from_pairs(corpus, cfg)
    val_labels = bundle_c.validation_labels.astype(bool)
    subsystem_val_recall = bundle_c.validation_triples[val_labels].mean(axis=0)
    bundle_c.reoptimize(ObjectiveSpec(kind="accuracy-subject-to-recall",
                                      r=float(subsystem_val_recall.max())))
    ev_c = bundle_c.evaluate(samples_c["test"])
    hawk_recall = ev_c["hawk"]["recall"]
    sub_recalls = {k: ev_c[k]["recall"] for k in ("revpov", "revstats", "exspc")}
    cautious_ok = all(hawk_recall >= r for r in sub_recalls.values())

    total = train_seconds + (time.time() - start)
    ok = blatant_ok and cautious_ok and total <= 600.0
    report(
        "8 end-to-end desk scale (blatant recall/acc >= 0.85; cautious HAWK recall >= subsystems; <= 10 min)",
        ok,
        f"blatant rec {recall:.3f} acc {accuracy:.3f}; cautious hawk {hawk_recall:.3f} vs "
        + ", ".join(f"{k} {v:.3f}" for k, v in sub_recalls.items())
        + f"; {total:.0f}s",
    )
    assert blatant_ok, (recall, accuracy)
    assert cautious_ok, (hawk_recall, sub_recalls)
    assert total <= 600.0, total


def _sweep_config(seed):
    cfg = acceptance_config(seed=seed, r=0.7)
    cfg.revpov.encoder_epochs = 1
    cfg.revpov.forest_trees = 30
    cfg.exspc.epochs = 3
    return cfg


def test_criterion_9_robustness_sweep():
    corpus = make_corpus(132, seed=73, players=6, rounds=3)
    train_pairs, val_pairs, test_pairs = corpus[:120], corpus[120:126], corpus[126:]
    cfg = _sweep_config(seed=19)
    val = build_samples(val_pairs, cfg.feature)
    test = build_samples(test_pairs, cfg.feature)
    sweep_a = robustness_sweep(train_pairs, val, test, cfg, partition_size=40)
    shape_ok = len(sweep_a["rows"]) == 3
    sweep_b = robustness_sweep(train_pairs, val, test, _sweep_config(seed=19), partition_size=40)
    deterministic = sweep_csv(sweep_a) == sweep_csv(sweep_b)

    # mid-corpus cheat-parameter shift: the later partitions carry adapted
    # cheats (single kind, changed parameters via raised sophistication)
    early = make_corpus(60, seed=74, players=6, rounds=3)
    late = make_corpus(
        60, seed=75, players=6, rounds=3,
        cheater_kinds=("aimbot",), sophistication=0.35, date_offset_days=30,
    )
    shifted = early + late
    shifted_sweep = robustness_sweep(shifted, val, test, _sweep_config(seed=20), partition_size=40)
    final_recall = shifted_sweep["rows"][-1]["test.recall"]
    recall_ok = final_recall is not None and final_recall >= 0.7

    ok = shape_ok and deterministic and recall_ok
    report(
        "9 robustness sweep (3 rows, deterministic, shifted-corpus final recall >= 0.7)",
        ok,
        f"rows {len(sweep_a['rows'])}, deterministic {deterministic}, final test recall {final_recall}",
    )
    assert ok


def test_criterion_10_workflow_round_trip(blatant_run, tmp_path):
    from hawk.service import HawkService

    bundle, samples, _ = blatant_run
    service = HawkService(tmp_path / "svc", bundle)
    # pick a test match containing a cheater the bundle flags
    flagged_entry = None
    for seed in range(90, 102):
        corpus = make_corpus(1, seed=seed, players=10, rounds=4)
        service.submit_match(serialize_match(corpus[0][0]).encode())
        queue = service.flagged()
        if queue:
            flagged_entry = queue[0]
            break
    assert flagged_entry is not None

    banned_before = len(service.banned)
    corpus_before = len(list((service.data_dir / "corpus" / "matches").glob("*.json")))
    service.post_verdict(flagged_entry["reportId"], flagged_entry["steamId"], "confirmed", "gm-a")
    banned_after = len(service.banned)
    corpus_after = len(list((service.data_dir / "corpus" / "matches").glob("*.json")))
    grew_once = (banned_after == banned_before + 1) and (corpus_after == corpus_before + 1)

    state = service.banned_db_state()
    restarted = HawkService(service.data_dir, bundle)
    replay_ok = restarted.banned_db_state() == state

    ok = grew_once and replay_ok
    report(
        "10 workflow round-trip (confirm grows banned DB + corpus by 1; replay byte-identical)",
        ok,
        f"banned {banned_before}->{banned_after}, corpus {corpus_before}->{corpus_after}, replay {replay_ok}",
    )
    assert ok
