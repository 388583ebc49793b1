"""Tunable constants for feature extraction.

All thresholds are expressed in seconds so features are invariant to the
tick-rate scaling of a match (ticks x2 with tickRate x2 leaves every value
unchanged). The fhp tolerance defaults to one tick at 128/s.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FeatureConfig:
    fov_half_angle_deg: float = 45.0
    engagement_reset_seconds: float = 10.0
    inertial_window_seconds: float = 0.15
    fire_round_gap_seconds: float = 5.0
    fhp_match_tolerance_seconds: float = 1.0 / 128.0
    ttk_cap_seconds: float = 10.0
    distance_scale: float = 1.0  # world units per "meter" in shr thresholds
    movement_stride_ticks: int = 16
    props_capacity: int = 5  # max props carried per round (pui denominator)


DEFAULT_CONFIG = FeatureConfig()
