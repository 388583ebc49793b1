"""Engagement segmentation on hand-built fixtures."""

import pytest

from hawk.features import segment_engagements, view_angle_deg
from hawk.replay.model import (
    DamageEvent,
    MatchRecord,
    MovementFrame,
    PlayerFrame,
    PlayerRef,
    RoundRecord,
    WeaponFireEvent,
)

# multiples of 0.05 s land exactly on this tick grid
TICK_RATE = 160


def frame_entry(steam_id, side, x=0.0, view_x=0.0, view_y=0.0, alive=True, blinded=False):
    return PlayerFrame(
        steam_id=steam_id, side=side, x=x, y=0.0, z=0.0,
        view_x=view_x, view_y=view_y,
        velocity_x=0.0, velocity_y=0.0, velocity_z=0.0,
        is_alive=alive, is_blinded=blinded, is_airborne=False,
        is_ducking=False, is_ducking_in_progress=False, is_un_ducking_in_progress=False,
        is_defusing=False, is_planting=False, is_reloading=False, is_in_bomb_zone=False,
        is_standing=True, is_scoped=False, is_walking=False, isolation_degree=0.0,
    )


def fire_at(t, view_x=0.0, view_y=0.0, ammo=30):
    tick = int(round(t * TICK_RATE))
    return WeaponFireEvent(
        tick=tick, seconds=t, round_num=1,
        player_steam_id="me", player_side="CT",
        player_x=0.0, player_y=0.0, player_z=0.0,
        player_view_x=view_x, player_view_y=view_y, player_strafe=False,
        weapon="ak47", weapon_class="rifle", zoom_level=0,
        ammo_in_magazine=ammo, ammo_in_reserve=90,
    )


def damage_at(t, victim="opp", view_x=0.0, view_y=0.0, distance=300.0, hp=30, hit_group="chest",
              strafe=False, weapon_class="rifle"):
    tick = int(round(t * TICK_RATE))
    return DamageEvent(
        tick=tick, seconds=t, round_num=1,
        attacker_steam_id="me", attacker_side="CT",
        victim_steam_id=victim, victim_side="T",
        attacker_x=0.0, attacker_y=0.0, attacker_z=0.0,
        victim_x=distance, victim_y=0.0, victim_z=0.0,
        attacker_view_x=view_x, attacker_view_y=view_y,
        victim_view_x=180.0, victim_view_y=0.0,
        attacker_strafe=strafe, weapon="ak47", weapon_class=weapon_class,
        hp_damage=hp, hp_damage_taken=min(hp, 100), armor_damage=0, armor_damage_taken=0,
        hit_group=hit_group, is_friendly_fire=False, distance=distance, zoom_level=0,
    )


def build_match(frames, fires=(), damages=(), kills=(), end_seconds=40.0):
    return MatchRecord(
        match_id="fixture", map_name="map", tick_rate=TICK_RATE, date_utc="2025-01-01T00:00:00Z",
        players=(PlayerRef("me", "CT"), PlayerRef("opp", "T")),
        rounds=(RoundRecord(1, 0, 0, int(end_seconds * TICK_RATE), "CT"),),
        damages=tuple(damages), kills=tuple(kills), weapon_fires=tuple(fires),
        flashes=(), grenades=(), frames=tuple(frames), economy=(),
    )


def visibility_frames(spot_times, horizon=20.0, step=0.25):
    """Opponent sits east of the player; the player looks at them only
    during the listed windows (otherwise looks straight down)."""
    frames = []
    t = 0.0
    while t <= horizon:
        tick = int(round(t * TICK_RATE))
        looking = any(lo <= t <= hi for lo, hi in spot_times)
        me = frame_entry("me", "CT", view_x=0.0, view_y=0.0 if looking else -80.0)
        opp = frame_entry("opp", "T", x=300.0, view_x=180.0)
        frames.append(MovementFrame(tick=tick, round_num=1, players=(me, opp)))
        t += step
    return frames


class TestSegmentation:
    def test_rat_ajt_drt_from_definition(self):
        # spot at 1.0 s, fire at 1.3 s, first hit at 1.5 s
        match = build_match(
            visibility_frames([(1.0, 2.0)]),
            fires=[fire_at(1.3)],
            damages=[damage_at(1.5)],
        )
        engs = segment_engagements(match, "me")
        assert len(engs) == 1
        eng = engs[0]
        assert eng.t0 == pytest.approx(1.0)
        assert eng.rat == pytest.approx(0.3)
        assert eng.ajt == pytest.approx(0.2)
        assert eng.drt == pytest.approx(0.5)
        assert eng.opponent_id == "opp"

    def test_raa_wraparound(self):
        # view (350, 0) at spot, (10, 0) at fire: 20 degrees across the seam
        frames = []
        for t in (0.0, 0.25, 0.5, 0.75, 1.0):
            me = frame_entry("me", "CT", view_x=350.0, view_y=0.0 if t >= 1.0 else -80.0)
            opp = frame_entry("opp", "T", x=300.0)
            frames.append(MovementFrame(tick=int(t * TICK_RATE), round_num=1, players=(me, opp)))
        match = build_match(frames, fires=[fire_at(1.3, view_x=10.0)], damages=[damage_at(1.5, view_x=10.0)])
        engs = segment_engagements(match, "me")
        assert engs[0].raa == pytest.approx(20.0, abs=1e-9)

    def test_ten_second_reset_gives_two_engagements(self):
        match = build_match(
            visibility_frames([(1.0, 1.2), (12.0, 12.4)], horizon=14.0),
            fires=[],
            damages=[],
        )
        engs = segment_engagements(match, "me")
        assert len(engs) == 2
        assert engs[0].t0 == pytest.approx(1.0)
        assert engs[1].t0 == pytest.approx(12.0)

    def test_no_engagements_is_empty_list(self):
        match = build_match(visibility_frames([]))
        assert segment_engagements(match, "me") == []

    def test_blinded_viewer_cannot_spot(self):
        frames = []
        for t in (0.0, 0.25, 0.5):
            me = frame_entry("me", "CT", view_x=0.0, view_y=0.0, blinded=True)
            opp = frame_entry("opp", "T", x=300.0)
            frames.append(MovementFrame(tick=int(t * TICK_RATE), round_num=1, players=(me, opp)))
        match = build_match(frames)
        assert segment_engagements(match, "me") == []

    def test_dead_opponent_not_visible(self):
        frames = []
        for t in (0.0, 0.25, 0.5):
            me = frame_entry("me", "CT", view_x=0.0, view_y=0.0)
            opp = frame_entry("opp", "T", x=300.0, alive=False)
            frames.append(MovementFrame(tick=int(t * TICK_RATE), round_num=1, players=(me, opp)))
        match = build_match(frames)
        assert segment_engagements(match, "me") == []

    def test_fire_before_spot_does_not_set_t1(self):
        match = build_match(
            visibility_frames([(2.0, 3.0)]),
            fires=[fire_at(1.0), fire_at(2.5)],
            damages=[],
        )
        engs = segment_engagements(match, "me")
        assert len(engs) == 1
        assert engs[0].rat == pytest.approx(0.5)


class TestViewAngle:
    def test_wraparound(self):
        assert view_angle_deg((350.0, 0.0), (10.0, 0.0)) == pytest.approx(20.0)

    def test_pitch_only(self):
        assert view_angle_deg((0.0, 30.0), (0.0, -10.0)) == pytest.approx(40.0)

    def test_identical_views(self):
        assert view_angle_deg((123.4, 5.6), (123.4, 5.6)) == pytest.approx(0.0, abs=1e-9)

    def test_range(self):
        assert 0.0 <= view_angle_deg((0.0, 0.0), (180.0, 0.0)) <= 180.0
