"""Shared fixtures: synthetic corpora and a trained desk-scale bundle."""

from __future__ import annotations

import pytest

from hawk.exspc import ExSpcConfig
from hawk.mvin import ObjectiveSpec
from hawk.pipeline import PipelineConfig, train_from_pairs
from hawk.replay import CheatProfile, generate_synthetic_match
from hawk.revpov import RevPovConfig
from hawk.revstats import RevStatsConfig


def make_corpus(
    n_matches: int,
    seed: int = 1,
    players: int = 10,
    rounds: int = 4,
    sophistication: float = 0.0,
    cheater_kinds: tuple[str, ...] = ("aimbot", "wallhack"),
    cheaters_per_match: int = 1,
    frame_stride: int = 32,
    play_seconds: tuple[float, float] = (12.0, 18.0),
    date_offset_days: int = 0,
):
    """Dated corpus with cheater kinds alternating across matches."""
    pairs = []
    for mi in range(n_matches):
        kind = cheater_kinds[mi % len(cheater_kinds)]
        profiles = [CheatProfile(kind=kind, sophistication=sophistication)] * cheaters_per_match
        profiles += [CheatProfile()] * (players - cheaters_per_match)
        day, hour = divmod(mi, 4)
        date = f"2025-{3 + (day + date_offset_days) // 28:02d}-{(day + date_offset_days) % 28 + 1:02d}T{hour * 6:02d}:00:00Z"
        pairs.append(
            generate_synthetic_match(
                profiles,
                rounds,
                seed * 100000 + mi,
                match_id=f"m{seed}-{mi:04d}",
                date_utc=date,
                frame_stride=frame_stride,
                play_seconds=play_seconds,
            )
        )
    return pairs


def fast_config(seed: int = 7) -> PipelineConfig:
    """Reduced-width config for test-speed training runs."""
    cfg = PipelineConfig(seed=seed)
    cfg.revpov = RevPovConfig(
        hidden=16,
        dense_dim=16,
        out_dim=8,
        max_len=64,
        encoder_epochs=2,
        forest_trees=40,
        forest_depth=10,
    )
    cfg.revstats = RevStatsConfig()
    cfg.exspc = ExSpcConfig(
        epochs=6,
        shrink_dim=16,
        reduce_hidden=32,
        reduce_out=16,
        deepen_hidden=16,
        deepen_out=8,
        head_hidden=8,
    )
    cfg.objective = ObjectiveSpec(kind="accuracy-subject-to-recall", r=0.7)
    return cfg


@pytest.fixture(scope="session")
def small_corpus():
    # two cheaters per match: enough validation positives for stable recall
    return make_corpus(40, seed=11, cheaters_per_match=2)


@pytest.fixture(scope="session")
def trained_bundle(small_corpus):
    """One blatant-cheater training run shared by the subsystem tests."""
    bundle, samples = train_from_pairs(small_corpus, fast_config(seed=7))
    return bundle, samples
