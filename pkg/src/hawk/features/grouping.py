"""Sense / performance partition of the temporal streams and the 28 features."""

from __future__ import annotations

from .structured import FEATURE_NAMES

TEMPORAL_SENSE = ("movement", "economy", "offensiveProps", "auxiliaryProps")
TEMPORAL_PERF = ("weaponFire", "elimination", "damage")

STRUCTURED_SENSE = ("fei", "opi", "isp", "bkp", "pui")
STRUCTURED_PERF = tuple(n for n in FEATURE_NAMES if n not in STRUCTURED_SENSE)

STRUCTURED_SENSE_IDX = tuple(FEATURE_NAMES.index(n) for n in STRUCTURED_SENSE)
STRUCTURED_PERF_IDX = tuple(FEATURE_NAMES.index(n) for n in STRUCTURED_PERF)


def check_partition() -> None:
    """The two structured sets partition the 28 names; temporal sets the 7."""
    assert sorted(STRUCTURED_SENSE + STRUCTURED_PERF) == sorted(FEATURE_NAMES)
    assert sorted(TEMPORAL_SENSE + TEMPORAL_PERF) == sorted(
        ("damage", "auxiliaryProps", "offensiveProps", "elimination", "weaponFire", "movement", "economy")
    )
