"""Synthetic match generator.

Produces a full MatchRecord (all five event lists, movement frames, economy)
plus labels, as a pure function of (profiles, rounds, seed). Honest players
draw reaction times / headshot rates / prop usage from normal-player
baselines; cheater profiles shift the relevant parameters toward blatant
values scaled by (1 - sophistication).

Engagements are scripted so the feature extractor can recover them: the
attacker's view pitch idles at -60 deg (nothing in the 45-deg field of view)
and snaps onto the target exactly at the spot frame, so the detected t0
equals the scripted t0 regardless of frame stride.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from datetime import datetime, timedelta, timezone

import numpy as np

from ..errors import ConfigError
from .model import (
    CheatProfile,
    DamageEvent,
    EconomyRecord,
    FlashEvent,
    GrenadeEvent,
    KillEvent,
    LabelSet,
    MatchRecord,
    MovementFrame,
    PlayerFrame,
    PlayerLabel,
    PlayerRef,
    RoundRecord,
    WeaponFireEvent,
    normalize_yaw,
)

EVENT_GRID = 0.05  # effective simulation resolution in seconds

_HONEST = {
    "reaction_mean": 0.45,
    "reaction_std": 0.12,
    "adjust_mean": 0.28,
    "adjust_std": 0.10,
    "overlap_rate": 0.05,  # P(first fire lands, t1 == t2)
    "headshot_bias": 0.20,
    "kill_rate": 0.45,
    "engagement_rate": 2.2,
    "idle_fire_rate": 3.0,
    "inertial_rate": 0.55,
    "props_rate": 0.8,
    "flash_opponent_bias": 0.8,
    "wallbang_rate": 0.02,
    "thrusmoke_rate": 0.02,
    "blindkill_rate": 0.01,
    "onetap_rate": 0.03,
    "spot_offset_lo": 12.0,
    "spot_offset_hi": 40.0,
    "aim_jitter_fire": 3.0,
    "miss_extra_fires": 4.0,
    "strafe_hit_rate": 0.35,
    "vulnerability": 1.0,
    "guard_lead_rate": 0.3,
    "range_scale": 1.0,
}

_BLATANT = {
    "aimbot": {
        "reaction_mean": 0.12,
        "reaction_std": 0.03,
        "adjust_mean": 0.08,
        "adjust_std": 0.03,
        "overlap_rate": 0.60,
        "headshot_bias": 0.75,
        "kill_rate": 0.90,
        "engagement_rate": 3.0,
        "idle_fire_rate": 0.8,
        "inertial_rate": 0.05,
        "props_rate": 0.25,
        "onetap_rate": 0.30,
        "spot_offset_lo": 1.0,
        "spot_offset_hi": 8.0,
        "aim_jitter_fire": 0.2,
        "miss_extra_fires": 0.6,
        "strafe_hit_rate": 0.60,
        "vulnerability": 0.3,
        "guard_lead_rate": 0.9,
        "range_scale": 1.7,
    },
    "wallhack": {
        "reaction_mean": 0.28,
        "reaction_std": 0.06,
        "adjust_mean": 0.18,
        "adjust_std": 0.06,
        "overlap_rate": 0.15,
        "headshot_bias": 0.30,
        "kill_rate": 0.70,
        "engagement_rate": 2.8,
        "idle_fire_rate": 1.0,
        "inertial_rate": 0.30,
        "props_rate": 0.2,
        "wallbang_rate": 0.30,
        "thrusmoke_rate": 0.20,
        "blindkill_rate": 0.10,
        "spot_offset_lo": 2.0,
        "spot_offset_hi": 10.0,
        "aim_jitter_fire": 1.2,
        "vulnerability": 0.35,
        "guard_lead_rate": 0.85,
    },
    "boosting-like": {
        "reaction_mean": 0.22,
        "reaction_std": 0.06,
        "adjust_mean": 0.14,
        "adjust_std": 0.05,
        "headshot_bias": 0.45,
        "kill_rate": 0.70,
        "props_rate": 0.15,
        "flash_opponent_bias": 0.45,
        "idle_fire_rate": 1.2,
        "spot_offset_lo": 4.0,
        "spot_offset_hi": 14.0,
        "aim_jitter_fire": 0.8,
        "vulnerability": 1.2,
    },
}


def resolve_params(profile: CheatProfile) -> dict:
    """Interpolate honest->blatant by (1 - sophistication), apply overrides."""
    params = dict(_HONEST)
    if profile.kind != "honest":
        strength = 1.0 - profile.sophistication
        for key, blatant in _BLATANT[profile.kind].items():
            params[key] = params[key] + (blatant - params[key]) * strength
    unknown = set(profile.overrides) - set(params)
    if unknown:
        raise ConfigError(f"unknown profile overrides: {sorted(unknown)}")
    params.update(profile.overrides)
    return params


@dataclass
class _Engagement:
    attacker: int
    target: int
    t0: float  # seconds, global clock, frame-aligned
    rat: float
    ajt: float
    n_damage: int
    extra_fires: int
    kill: bool
    onetap: bool
    spot_offset: float
    offset_dir: float
    blind_style: bool  # wallhack firing while flashed: no FOV snap


def _direction(dx: float, dy: float, dz: float) -> tuple[float, float]:
    yaw = normalize_yaw(math.degrees(math.atan2(dy, dx)))
    horiz = math.hypot(dx, dy)
    pitch = math.degrees(math.atan2(dz, horiz)) if horiz > 0 or dz != 0 else 0.0
    return yaw, max(-90.0, min(90.0, pitch))


class _Sim:
    def __init__(self, profiles, rounds, seed, tick_rate, frame_stride, play_lo, play_hi):
        self.rng = np.random.Generator(np.random.PCG64(seed))
        self.n = len(profiles)
        self.profiles = profiles
        self.params = [resolve_params(p) for p in profiles]
        self.tick_rate = tick_rate
        self.stride = frame_stride
        self.play_lo = play_lo
        self.play_hi = play_hi
        self.n_rounds = rounds
        self.sides = ["CT" if i % 2 == 0 else "T" for i in range(self.n)]
        self.steam_ids = [f"76561198{1000000 + i:08d}" for i in range(self.n)]
        self.weapons = []
        for i in range(self.n):
            sniper = self.rng.random() < 0.2
            self.weapons.append(("awp", "sniper") if sniper else ("ak47", "rifle"))
        self.damages: list[DamageEvent] = []
        self.kills: list[KillEvent] = []
        self.fires: list[WeaponFireEvent] = []
        self.flashes: list[FlashEvent] = []
        self.grenades: list[GrenadeEvent] = []
        self.frames: list[MovementFrame] = []
        self.economy: list[EconomyRecord] = []

    # -- timing helpers -------------------------------------------------

    def tick_of(self, t: float) -> int:
        return int(round(t * self.tick_rate))

    def grid(self, t: float) -> float:
        return round(t / EVENT_GRID) * EVENT_GRID

    # -- round geometry --------------------------------------------------

    def build_rounds(self):
        rounds = []
        start = 0
        freeze_ticks = 3 * self.tick_rate
        for rn in range(1, self.n_rounds + 1):
            play = self.rng.uniform(self.play_lo, self.play_hi)
            play_ticks = int(round(play * self.tick_rate / self.stride)) * self.stride
            end = start + freeze_ticks + play_ticks
            winner = "CT" if self.rng.random() < 0.5 else "T"
            rounds.append(
                RoundRecord(
                    round_num=rn,
                    start_tick=start,
                    freeze_time_end_tick=start + freeze_ticks,
                    end_tick=end,
                    winner_side=winner,
                )
            )
            start = end + self.tick_rate  # 1 s between rounds
        self.rounds = rounds

    def spawn_pos(self, i: int) -> np.ndarray:
        base = np.array([-900.0, 0.0]) if self.sides[i] == "CT" else np.array([900.0, 0.0])
        return base + self.rng.uniform(-150.0, 150.0, size=2)

    def build_paths(self, rnd: RoundRecord):
        """Piecewise-linear waypoint path per player over the play phase."""
        t_start = rnd.freeze_time_end_tick / self.tick_rate
        t_end = rnd.end_tick / self.tick_rate
        paths = []
        for i in range(self.n):
            points = [self.spawn_pos(i)]
            n_way = 3
            for _ in range(n_way):
                points.append(self.rng.uniform(-1000.0, 1000.0, size=2))
            times = np.linspace(t_start, t_end, n_way + 1)
            paths.append((times, np.array(points)))
        self.paths = paths
        self.round_play = (t_start, t_end)

    def pos_at(self, i: int, t: float) -> np.ndarray:
        times, points = self.paths[i]
        t_start, t_end = self.round_play
        if t <= t_start:
            return points[0]
        if t >= t_end:
            return points[-1]
        x = np.interp(t, times, points[:, 0])
        y = np.interp(t, times, points[:, 1])
        return np.array([x, y])

    def vel_at(self, i: int, t: float) -> np.ndarray:
        times, points = self.paths[i]
        t_start, t_end = self.round_play
        if t <= t_start or t >= t_end:
            return np.zeros(2)
        seg = int(np.searchsorted(times, t, side="right")) - 1
        seg = min(max(seg, 0), len(times) - 2)
        dt = times[seg + 1] - times[seg]
        return (points[seg + 1] - points[seg]) / dt if dt > 0 else np.zeros(2)

    # -- per-round event simulation ---------------------------------------

    def schedule_engagements(self, rnd: RoundRecord) -> list[_Engagement]:
        t_start, t_end = self.round_play
        window = (t_start + 1.0, t_end - 3.0)
        scripts = []
        for i in range(self.n):
            par = self.params[i]
            opponents = [j for j in range(self.n) if self.sides[j] != self.sides[i]]
            if not opponents:
                continue
            k = self.rng.poisson(par["engagement_rate"])
            if k == 0 or window[1] <= window[0]:
                continue
            raw = np.sort(self.rng.uniform(window[0], window[1], size=k))
            picked = []
            for t in raw:
                if not picked or t - picked[-1] >= 5.0:
                    picked.append(float(t))
            weights = np.array([self.params[j]["vulnerability"] for j in opponents])
            weights = weights / weights.sum()
            for t in picked:
                target = int(self.rng.choice(opponents, p=weights))
                # align the spot moment to the movement-frame grid
                tick0 = int(math.ceil(t * self.tick_rate / self.stride)) * self.stride
                t0 = tick0 / self.tick_rate
                rat = max(0.05, self.rng.normal(par["reaction_mean"], par["reaction_std"]))
                if self.rng.random() < par["overlap_rate"]:
                    ajt = 0.0
                else:
                    ajt = max(EVENT_GRID, self.rng.normal(par["adjust_mean"], par["adjust_std"]))
                kill = self.rng.random() < par["kill_rate"]
                onetap = kill and self.rng.random() < par["onetap_rate"]
                n_damage = 1 if onetap else (int(self.rng.integers(1, 4)) if kill else int(self.rng.integers(1, 3)))
                extra = int(self.rng.poisson(par["miss_extra_fires"]))
                blind_style = self.rng.random() < par["blindkill_rate"]
                scripts.append(
                    _Engagement(
                        attacker=i,
                        target=target,
                        t0=t0,
                        rat=self.grid(rat),
                        ajt=self.grid(ajt),
                        n_damage=n_damage,
                        extra_fires=extra,
                        kill=kill,
                        onetap=onetap,
                        spot_offset=self.rng.uniform(par["spot_offset_lo"], par["spot_offset_hi"]),
                        offset_dir=self.rng.uniform(0.0, 2.0 * math.pi),
                        blind_style=blind_style,
                    )
                )
        scripts.sort(key=lambda e: (e.t0, e.attacker))
        return scripts

    def run_round(self, rnd: RoundRecord):
        self.build_paths(rnd)
        t_start, t_end = self.round_play
        death_time = {}  # player index -> seconds
        magazines = [30] * self.n
        reserves = [90] * self.n
        self.aim_windows = [[] for _ in range(self.n)]  # (t_lo, t_hi, target, offset, dir)
        self.guard_windows = [[] for _ in range(self.n)]
        self.blind_windows = [[] for _ in range(self.n)]
        round_kills = []

        def alive(idx, t):
            return death_time.get(idx, math.inf) > t

        # props first so blind windows exist before engagement execution
        for i in range(self.n):
            par = self.params[i]
            for _ in range(int(self.rng.poisson(par["props_rate"]))):
                t_throw = self.grid(self.rng.uniform(t_start + 0.5, t_end - 1.0))
                kind = self.rng.choice(
                    np.array(["flash", "smoke", "HE", "incendiary"]),
                    p=[0.4, 0.25, 0.2, 0.15],
                )
                if not alive(i, t_throw):
                    continue
                t_destroy = self.grid(t_throw + self.rng.uniform(0.8, 2.5))
                t_destroy = min(t_destroy, t_end)
                pos = self.pos_at(i, t_throw)
                land = pos + self.rng.uniform(-300, 300, size=2)
                self.grenades.append(
                    GrenadeEvent(
                        throw_tick=self.tick_of(t_throw),
                        destroy_tick=max(self.tick_of(t_destroy), self.tick_of(t_throw)),
                        throw_seconds=self._round_seconds(t_throw, rnd),
                        destroy_seconds=self._round_seconds(t_destroy, rnd),
                        round_num=rnd.round_num,
                        thrower_steam_id=self.steam_ids[i],
                        thrower_side=self.sides[i],
                        grenade_type=str(kind),
                        grenade_x=float(land[0]),
                        grenade_y=float(land[1]),
                        grenade_z=0.0,
                    )
                )
                if kind == "flash":
                    n_victims = int(self.rng.integers(1, 4))
                    opponents = [j for j in range(self.n) if self.sides[j] != self.sides[i]]
                    mates = [j for j in range(self.n) if self.sides[j] == self.sides[i]]
                    for _ in range(n_victims):
                        if opponents and self.rng.random() < par["flash_opponent_bias"]:
                            vic = int(self.rng.choice(opponents))
                        else:
                            vic = int(self.rng.choice(mates))
                        if not alive(vic, t_destroy):
                            continue
                        dur = float(self.rng.uniform(0.4, 3.2))
                        self.flashes.append(
                            FlashEvent(
                                tick=self.tick_of(t_destroy),
                                seconds=self._round_seconds(t_destroy, rnd),
                                round_num=rnd.round_num,
                                attacker_steam_id=self.steam_ids[i],
                                attacker_side=self.sides[i],
                                player_steam_id=self.steam_ids[vic],
                                player_side=self.sides[vic],
                                flash_duration=dur,
                            )
                        )
                        self.blind_windows[vic].append((t_destroy, t_destroy + dur))

        scripts = self.schedule_engagements(rnd)
        for eng in scripts:
            i, j = eng.attacker, eng.target
            if not alive(i, eng.t0) or not alive(j, eng.t0):
                continue
            par = self.params[i]
            attacker_blind = self._blinded(i, eng.t0)
            if attacker_blind and not eng.blind_style:
                continue  # an honest player does not fight while flashed
            t1 = self.grid(eng.t0 + eng.rat)
            t2 = self.grid(t1 + eng.ajt)
            damage_times = [t2]
            for _ in range(eng.n_damage - 1):
                damage_times.append(self.grid(damage_times[-1] + self.rng.uniform(0.15, 0.4)))
            damage_times = [t for t in damage_times if t < t_end - 0.2]
            if not damage_times:
                continue
            kill = eng.kill and len(damage_times) == eng.n_damage
            t_kill = damage_times[-1] if kill else None
            if t_kill is not None and not alive(j, t_kill):
                kill = False
                t_kill = None
                damage_times = [t for t in damage_times if alive(j, t)]
                if not damage_times:
                    continue

            # weapon fires: burst starting at t1
            n_fires = len(damage_times) + eng.extra_fires
            fire_times = [self.grid(t1 + 0.1 * m) for m in range(max(n_fires, 1))]
            fire_times = [t for t in fire_times if t < t_end - 0.1]
            if not fire_times:
                continue
            if magazines[i] < len(fire_times) + 2:
                reserves[i] = max(0, reserves[i] - (30 - magazines[i]))
                magazines[i] = 30
            weapon, weapon_class = self.weapons[i]
            for t in fire_times:
                self._emit_fire(i, j, t, rnd, magazines, reserves, jitter=par["aim_jitter_fire"])
                magazines[i] -= 1

            # damages (and kill on the last one)
            dist_scale = par["range_scale"]
            total_hp = 0
            for di, t in enumerate(damage_times):
                last = di == len(damage_times) - 1
                if eng.onetap:
                    hp = int(self.rng.integers(100, 118))
                elif last and kill:
                    hp = int(self.rng.integers(25, 60))
                else:
                    hp = int(self.rng.integers(18, 46))
                total_hp += hp
                if self.rng.random() < par["headshot_bias"]:
                    hg = "head"
                else:
                    hg = str(self.rng.choice(
                        np.array(["chest", "stomach", "leftArm", "rightArm", "leftLeg", "rightLeg"]),
                        p=[0.42, 0.22, 0.09, 0.09, 0.09, 0.09],
                    ))
                self._emit_damage(i, j, t, rnd, hp, hg, dist_scale, par)
                if last and kill:
                    is_wallbang = self.rng.random() < par["wallbang_rate"]
                    thru_smoke = self.rng.random() < par["thrusmoke_rate"]
                    pen = 0
                    if is_wallbang:
                        pen = int(self.rng.choice(np.array([1, 1, 1, 2, 2, 3])))
                    kill_ev = self._emit_kill(
                        i, j, t, rnd, hg == "head", is_wallbang, pen, thru_smoke,
                        attacker_blinded=self._blinded(i, t),
                    )
                    round_kills.append(kill_ev)
                    death_time[j] = t
            if kill and self.rng.random() < par["inertial_rate"]:
                for m in range(int(self.rng.integers(1, 3))):
                    t = self.grid(damage_times[-1] + 0.05 * (m + 1))
                    if t < t_end - 0.1 and magazines[i] > 0:
                        self._emit_fire(i, j, t, rnd, magazines, reserves, jitter=par["aim_jitter_fire"])
                        magazines[i] -= 1

            # view scripting for detection (skipped for blind-style kills)
            if not eng.blind_style:
                t_sight_end = max(damage_times[-1], t1) + 0.3
                self.aim_windows[i].append((eng.t0, t_sight_end, j, eng.spot_offset, eng.offset_dir))
                if self.rng.random() < par["guard_lead_rate"]:
                    self.guard_windows[i].append((eng.t0 - 0.8, eng.t0))

        # honest-style random guard windows, away from engagements
        for i in range(self.n):
            for _ in range(int(self.rng.poisson(1.2))):
                t = self.rng.uniform(t_start, t_end - 1.0)
                self.guard_windows[i].append((t, t + self.rng.uniform(0.8, 2.5)))

        # idle fires away from engagement windows
        for i in range(self.n):
            par = self.params[i]
            for _ in range(int(self.rng.poisson(par["idle_fire_rate"]))):
                t = self.grid(self.rng.uniform(t_start + 0.5, t_end - 0.5))
                if not alive(i, t):
                    continue
                if any(lo - 2.5 <= t <= hi + 2.5 for lo, hi, *_ in self.aim_windows[i]):
                    continue
                n_spray = int(self.rng.integers(1, 4))
                if magazines[i] < n_spray:
                    reserves[i] = max(0, reserves[i] - (30 - magazines[i]))
                    magazines[i] = 30
                for m in range(n_spray):
                    tf = self.grid(t + 0.12 * m)
                    if tf < t_end - 0.1:
                        self._emit_fire(i, None, tf, rnd, magazines, reserves, jitter=25.0)
                        magazines[i] -= 1

        # first kill of the round
        if round_kills:
            first = min(round_kills, key=lambda k: k.tick)
            idx = self.kills.index(first)
            self.kills[idx] = replace(first, is_first_kill=True)

        self._emit_frames(rnd, death_time)
        self._emit_economy(rnd)

    # -- event emitters ---------------------------------------------------

    def _round_seconds(self, t: float, rnd: RoundRecord) -> float:
        return self.tick_of(t) / self.tick_rate - rnd.start_tick / self.tick_rate

    def _blinded(self, i: int, t: float) -> bool:
        return any(lo <= t <= hi for lo, hi in self.blind_windows[i])

    def _aim_view(self, i: int, j: int | None, t: float, jitter: float) -> tuple[float, float]:
        if j is None:
            yaw = float(self.rng.uniform(0.0, 360.0))
            return yaw, float(self.rng.uniform(-20.0, 5.0))
        pi, pj = self.pos_at(i, t), self.pos_at(j, t)
        yaw, pitch = _direction(pj[0] - pi[0], pj[1] - pi[1], 0.0)
        yaw = normalize_yaw(yaw + self.rng.normal(0.0, jitter))
        pitch = max(-90.0, min(90.0, pitch + self.rng.normal(0.0, jitter * 0.4)))
        return yaw, pitch

    def _emit_fire(self, i, j, t, rnd, magazines, reserves, jitter):
        pos = self.pos_at(i, t)
        view = self._aim_view(i, j, t, jitter)
        weapon, weapon_class = self.weapons[i]
        self.fires.append(
            WeaponFireEvent(
                tick=self.tick_of(t),
                seconds=self._round_seconds(t, rnd),
                round_num=rnd.round_num,
                player_steam_id=self.steam_ids[i],
                player_side=self.sides[i],
                player_x=float(pos[0]),
                player_y=float(pos[1]),
                player_z=0.0,
                player_view_x=view[0],
                player_view_y=view[1],
                player_strafe=bool(self.rng.random() < 0.4),
                weapon=weapon,
                weapon_class=weapon_class,
                zoom_level=1 if weapon_class == "sniper" else 0,
                ammo_in_magazine=max(magazines[i], 0),
                ammo_in_reserve=max(reserves[i], 0),
            )
        )

    def _emit_damage(self, i, j, t, rnd, hp, hit_group, dist_scale, par):
        pi, pj = self.pos_at(i, t), self.pos_at(j, t)
        dist = float(np.hypot(*(pj - pi))) * dist_scale
        view = self._aim_view(i, j, t, 0.4)
        vview = (float(self.rng.uniform(0, 360)), float(self.rng.uniform(-30, 10)))
        weapon, weapon_class = self.weapons[i]
        self.damages.append(
            DamageEvent(
                tick=self.tick_of(t),
                seconds=self._round_seconds(t, rnd),
                round_num=rnd.round_num,
                attacker_steam_id=self.steam_ids[i],
                attacker_side=self.sides[i],
                victim_steam_id=self.steam_ids[j],
                victim_side=self.sides[j],
                attacker_x=float(pi[0]),
                attacker_y=float(pi[1]),
                attacker_z=0.0,
                victim_x=float(pj[0]),
                victim_y=float(pj[1]),
                victim_z=0.0,
                attacker_view_x=view[0],
                attacker_view_y=view[1],
                victim_view_x=vview[0],
                victim_view_y=vview[1],
                attacker_strafe=bool(self.rng.random() < par["strafe_hit_rate"]),
                weapon=weapon,
                weapon_class=weapon_class,
                hp_damage=hp,
                hp_damage_taken=min(hp, 100),
                armor_damage=int(self.rng.integers(0, 15)),
                armor_damage_taken=0,
                hit_group=hit_group,
                is_friendly_fire=False,
                distance=dist,
                zoom_level=1 if weapon_class == "sniper" else 0,
            )
        )

    def _emit_kill(self, i, j, t, rnd, headshot, wallbang, pen, thru_smoke, attacker_blinded):
        pi, pj = self.pos_at(i, t), self.pos_at(j, t)
        view = self._aim_view(i, j, t, 0.3)
        vview = (float(self.rng.uniform(0, 360)), float(self.rng.uniform(-30, 10)))
        weapon, weapon_class = self.weapons[i]
        ev = KillEvent(
            tick=self.tick_of(t),
            seconds=self._round_seconds(t, rnd),
            round_num=rnd.round_num,
            attacker_steam_id=self.steam_ids[i],
            attacker_side=self.sides[i],
            victim_steam_id=self.steam_ids[j],
            victim_side=self.sides[j],
            attacker_x=float(pi[0]),
            attacker_y=float(pi[1]),
            attacker_z=0.0,
            victim_x=float(pj[0]),
            victim_y=float(pj[1]),
            victim_z=0.0,
            attacker_view_x=view[0],
            attacker_view_y=view[1],
            victim_view_x=vview[0],
            victim_view_y=vview[1],
            distance=float(np.hypot(*(pj - pi))),
            weapon=weapon,
            weapon_class=weapon_class,
            assister_steam_id=None,
            assister_side=None,
            is_suicide=False,
            is_teamkill=False,
            is_wallbang=wallbang,
            penetrated_objects=pen,
            is_first_kill=False,
            is_headshot=headshot,
            victim_blinded=self._blinded(j, t),
            attacker_blinded=attacker_blinded,
            flash_thrower_steam_id=None,
            flash_thrower_side=None,
            no_scope=bool(self.rng.random() < 0.05),
            thru_smoke=thru_smoke,
            is_trade=bool(self.rng.random() < 0.1),
        )
        self.kills.append(ev)
        return ev

    def _emit_frames(self, rnd: RoundRecord, death_time: dict):
        t_start, t_end = self.round_play
        first_tick = int(math.ceil(rnd.start_tick / self.stride)) * self.stride
        ticks = list(range(first_tick, rnd.end_tick + 1, self.stride))
        # precomputed idle view wander per player
        wander = np.cumsum(self.rng.normal(0.0, 6.0, size=(self.n, len(ticks))), axis=1)
        base_yaw = self.rng.uniform(0.0, 360.0, size=self.n)
        for fi, tick in enumerate(ticks):
            t = tick / self.tick_rate
            entries = []
            positions = {}
            alive_flags = {}
            for i in range(self.n):
                is_alive = death_time.get(i, math.inf) > t
                pos = self.pos_at(i, min(t, death_time.get(i, math.inf)))
                positions[i] = pos
                alive_flags[i] = is_alive
            for i in range(self.n):
                pos = positions[i]
                vel = self.vel_at(i, t) if alive_flags[i] else np.zeros(2)
                view_yaw = normalize_yaw(base_yaw[i] + float(wander[i, fi]))
                view_pitch = -60.0
                for lo, hi, target, offset, odir in self.aim_windows[i]:
                    if lo <= t <= hi and alive_flags[i]:
                        frac = 0.0 if hi == lo else (t - lo) / (hi - lo)
                        decay = max(0.1, 1.0 - 1.8 * frac)
                        tp = positions[target]
                        yaw, pitch = _direction(tp[0] - pos[0], tp[1] - pos[1], 0.0)
                        view_yaw = normalize_yaw(yaw + offset * decay * math.cos(odir))
                        view_pitch = max(-90.0, min(90.0, pitch + offset * decay * 0.3 * math.sin(odir)))
                        break
                guarding = any(lo <= t <= hi for lo, hi in self.guard_windows[i])
                mates = [j for j in range(self.n) if j != i and self.sides[j] == self.sides[i] and alive_flags[j]]
                if mates:
                    centroid = np.mean([positions[j] for j in mates], axis=0)
                    isolation = float(np.hypot(*(pos - centroid)))
                else:
                    isolation = 0.0
                speed = float(np.hypot(*vel))
                entries.append(
                    PlayerFrame(
                        steam_id=self.steam_ids[i],
                        side=self.sides[i],
                        x=float(pos[0]),
                        y=float(pos[1]),
                        z=0.0,
                        view_x=float(view_yaw),
                        view_y=float(view_pitch),
                        velocity_x=float(vel[0]),
                        velocity_y=float(vel[1]),
                        velocity_z=0.0,
                        is_alive=alive_flags[i],
                        is_blinded=self._blinded(i, t) and alive_flags[i],
                        is_airborne=False,
                        is_ducking=bool(guarding and alive_flags[i] and speed < 50.0),
                        is_ducking_in_progress=False,
                        is_un_ducking_in_progress=False,
                        is_defusing=False,
                        is_planting=False,
                        is_reloading=False,
                        is_in_bomb_zone=False,
                        is_standing=speed < 5.0,
                        is_scoped=guarding and alive_flags[i],
                        is_walking=5.0 <= speed < 130.0,
                        isolation_degree=isolation,
                    )
                )
            self.frames.append(MovementFrame(tick=tick, round_num=rnd.round_num, players=tuple(entries)))

    def _emit_economy(self, rnd: RoundRecord):
        for i in range(self.n):
            self.economy.append(
                EconomyRecord(
                    round_num=rnd.round_num,
                    steam_id=self.steam_ids[i],
                    equipment_value_freezetime_end=int(max(0, self.rng.normal(4000, 800))),
                    equipment_value_round_start=int(max(0, self.rng.normal(1200, 600))),
                    cash=int(max(0, self.rng.normal(5000, 2000))),
                    cash_spend_total=int(max(0, self.rng.normal(2600, 700))),
                )
            )


def generate_synthetic_match(
    profiles: list[CheatProfile],
    rounds: int,
    seed: int,
    *,
    tick_rate: int = 128,
    frame_stride: int = 16,
    match_id: str | None = None,
    map_name: str = "de_dust2",
    date_utc: str = "2025-01-01T00:00:00Z",
    play_seconds: tuple[float, float] = (14.0, 22.0),
    ban_lag_days: float | None = None,
) -> tuple[MatchRecord, LabelSet]:
    """Deterministic synthetic match for the given per-player profiles."""
    if not profiles:
        raise ConfigError("at least one player profile is required")
    if not 2 <= len(profiles) <= 10:
        raise ConfigError("player count must be between 2 and 10")
    if rounds < 1:
        raise ConfigError("rounds must be >= 1")
    if frame_stride < 1 or tick_rate < 1:
        raise ConfigError("tick rate and frame stride must be positive")

    sim = _Sim(profiles, rounds, seed, tick_rate, frame_stride, *play_seconds)
    sim.build_rounds()
    for rnd in sim.rounds:
        sim.run_round(rnd)

    sim.damages.sort(key=lambda e: e.tick)
    sim.kills.sort(key=lambda e: e.tick)
    sim.fires.sort(key=lambda e: e.tick)
    sim.flashes.sort(key=lambda e: e.tick)
    sim.grenades.sort(key=lambda e: e.throw_tick)

    match = MatchRecord(
        match_id=match_id or f"synth-{seed}",
        map_name=map_name,
        tick_rate=tick_rate,
        date_utc=date_utc,
        players=tuple(PlayerRef(steam_id=s, side=side) for s, side in zip(sim.steam_ids, sim.sides)),
        rounds=tuple(sim.rounds),
        damages=tuple(sim.damages),
        kills=tuple(sim.kills),
        weapon_fires=tuple(sim.fires),
        flashes=tuple(sim.flashes),
        grenades=tuple(sim.grenades),
        frames=tuple(sim.frames),
        economy=tuple(sim.economy),
    )

    ban_date = None
    if ban_lag_days is not None:
        base = datetime.fromisoformat(date_utc.replace("Z", "+00:00"))
        ban_date = (base + timedelta(days=ban_lag_days)).astimezone(timezone.utc).strftime(
            "%Y-%m-%dT%H:%M:%SZ"
        )
    labels = LabelSet(
        match_id=match.match_id,
        labels=tuple(
            PlayerLabel(
                steam_id=sid,
                cheater=prof.kind in ("aimbot", "wallhack"),
                cheat_type=prof.kind if prof.kind in ("aimbot", "wallhack") else "none",
                ban_date_utc=ban_date if prof.kind in ("aimbot", "wallhack") else None,
            )
            for sid, prof in zip(sim.steam_ids, profiles)
        ),
    )
    return match, labels
