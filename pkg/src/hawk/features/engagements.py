"""Engagement segmentation: the spot -> first-fire -> first-hit window.

An engagement with an opponent opens at the first movement frame where that
opponent enters the player's field of view (yaw and pitch both within the
configured half-angle toward the opponent, viewer alive and not blinded,
opponent alive). Within one valid period, t1 is the first weapon fire at or
after t0 and t2 the first damage on that opponent at or after t1. The period
stays alive while there is any sight/fire/damage activity and closes after
``engagement_reset_seconds`` without it, at the opponent's death, or at the
round end. Every closed period yields one Engagement record; t1/t2 may be
missing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import UnknownPlayer
from ..replay.model import MatchRecord
from .config import DEFAULT_CONFIG, FeatureConfig


def view_vector(yaw_deg: float, pitch_deg: float) -> tuple[float, float, float]:
    yaw = math.radians(yaw_deg)
    pitch = math.radians(pitch_deg)
    return (
        math.cos(pitch) * math.cos(yaw),
        math.cos(pitch) * math.sin(yaw),
        math.sin(pitch),
    )


def view_angle_deg(view_a: tuple[float, float], view_b: tuple[float, float]) -> float:
    """Great-circle angle in degrees between two (yaw, pitch) directions."""
    a = view_vector(*view_a)
    b = view_vector(*view_b)
    dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    cx = a[1] * b[2] - a[2] * b[1]
    cy = a[2] * b[0] - a[0] * b[2]
    cz = a[0] * b[1] - a[1] * b[0]
    cross = math.sqrt(cx * cx + cy * cy + cz * cz)
    return math.degrees(math.atan2(cross, dot))


def wrapped_yaw_diff(a: float, b: float) -> float:
    d = abs(a - b) % 360.0
    return min(d, 360.0 - d)


@dataclass
class Engagement:
    opponent_id: str
    t0: float
    t1: float | None = None
    t2: float | None = None
    rat: float | None = None
    ajt: float | None = None
    drt: float | None = None
    raa: float | None = None
    aja: float | None = None
    attacker_pos_t0: tuple[float, float, float] | None = None
    attacker_pos_t1: tuple[float, float, float] | None = None
    attacker_pos_t2: tuple[float, float, float] | None = None
    victim_pos: tuple[float, float, float] | None = None
    distance: float | None = None  # attacker-victim distance of the t2 damage


@dataclass
class _Period:
    t0: float
    view0: tuple[float, float]
    pos0: tuple[float, float, float]
    last_activity: float
    t1: float | None = None
    view1: tuple[float, float] | None = None
    pos1: tuple[float, float, float] | None = None
    t2: float | None = None
    view2: tuple[float, float] | None = None
    pos2: tuple[float, float, float] | None = None
    victim_pos: tuple[float, float, float] | None = None
    distance: float | None = None


def _finish(opponent: str, p: _Period) -> Engagement:
    eng = Engagement(
        opponent_id=opponent,
        t0=p.t0,
        t1=p.t1,
        t2=p.t2,
        attacker_pos_t0=p.pos0,
        attacker_pos_t1=p.pos1,
        attacker_pos_t2=p.pos2,
        victim_pos=p.victim_pos,
        distance=p.distance,
    )
    if p.t1 is not None:
        eng.rat = p.t1 - p.t0
        eng.raa = view_angle_deg(p.view0, p.view1)
    if p.t2 is not None:
        eng.drt = p.t2 - p.t0
        if p.t1 is not None:
            eng.ajt = p.t2 - p.t1
            eng.aja = view_angle_deg(p.view1, p.view2)
    return eng


def segment_engagements(
    match: MatchRecord, steam_id: str, config: FeatureConfig = DEFAULT_CONFIG
) -> list[Engagement]:
    if steam_id not in match.steam_ids:
        raise UnknownPlayer(steam_id)
    side = match.player_side(steam_id)
    opponents = [p.steam_id for p in match.players if p.side != side]
    if not opponents:
        return []
    rate = match.tick_rate
    reset = config.engagement_reset_seconds
    half = config.fov_half_angle_deg

    # merged per-round timelines: (tick, kind, payload); kind order at equal
    # ticks puts frames first so a same-tick fire is "after" the sighting
    events: dict[int, list] = {r.round_num: [] for r in match.rounds}
    for fr in match.frames:
        events.setdefault(fr.round_num, []).append((fr.tick, 0, fr))
    for w in match.weapon_fires:
        if w.player_steam_id == steam_id:
            events.setdefault(w.round_num, []).append((w.tick, 1, w))
    for d in match.damages:
        if d.attacker_steam_id == steam_id and d.victim_steam_id in set(opponents):
            events.setdefault(d.round_num, []).append((d.tick, 2, d))

    out: list[Engagement] = []
    for round_num in sorted(events):
        timeline = sorted(events[round_num], key=lambda e: (e[0], e[1]))
        periods: dict[str, _Period] = {}
        prev_visible: dict[str, bool] = {o: False for o in opponents}

        def close(opp: str):
            out.append(_finish(opp, periods.pop(opp)))

        for tick, kind, payload in timeline:
            t = tick / rate
            for opp in [o for o, p in list(periods.items()) if t - p.last_activity > reset]:
                close(opp)
                prev_visible[opp] = False  # detection reset: next sighting reopens

            if kind == 0:  # movement frame: visibility sampling
                me = next((p for p in payload.players if p.steam_id == steam_id), None)
                if me is None:
                    continue
                can_see = me.is_alive and not me.is_blinded
                for entry in payload.players:
                    opp = entry.steam_id
                    if entry.side == side or opp == steam_id:
                        continue
                    visible = False
                    if can_see and entry.is_alive:
                        dx, dy = entry.x - me.x, entry.y - me.y
                        dz = entry.z - me.z
                        horiz = math.hypot(dx, dy)
                        if horiz > 0.0 or dz != 0.0:
                            to_yaw = math.degrees(math.atan2(dy, dx)) % 360.0
                            to_pitch = math.degrees(math.atan2(dz, horiz))
                            visible = (
                                wrapped_yaw_diff(me.view_x, to_yaw) <= half
                                and abs(me.view_y - to_pitch) <= half
                            )
                    if visible:
                        if opp in periods:
                            periods[opp].last_activity = t
                        elif not prev_visible[opp]:
                            periods[opp] = _Period(
                                t0=t,
                                view0=(me.view_x, me.view_y),
                                pos0=(me.x, me.y, me.z),
                                last_activity=t,
                            )
                    elif not entry.is_alive and opp in periods:
                        close(opp)
                    prev_visible[opp] = visible

            elif kind == 1:  # weapon fire by the player
                for p in periods.values():
                    p.last_activity = t
                    if p.t1 is None and t >= p.t0:
                        p.t1 = t
                        p.view1 = (payload.player_view_x, payload.player_view_y)
                        p.pos1 = (payload.player_x, payload.player_y, payload.player_z)

            else:  # damage by the player on an opponent
                opp = payload.victim_steam_id
                p = periods.get(opp)
                if p is not None:
                    p.last_activity = t
                    if p.t2 is None and p.t1 is not None and t >= p.t1:
                        p.t2 = t
                        p.view2 = (payload.attacker_view_x, payload.attacker_view_y)
                        p.pos2 = (payload.attacker_x, payload.attacker_y, payload.attacker_z)
                        p.victim_pos = (payload.victim_x, payload.victim_y, payload.victim_z)
                        p.distance = payload.distance

        for opp in list(periods):
            close(opp)
    out.sort(key=lambda e: e.t0)
    return out
