"""The 28 per-player-per-match structured features.

Order is fixed: aiming (12), firing (6), elimination (8), props (2). Ratios
whose defining denominator is zero come back as 0.0 with the corresponding
missing-mask bit set; the mask travels with the vector and is consumed
downstream as extra binary inputs.

Averages and variances are population statistics (divide by N). All damage
and kill counts are restricted to opponents: friendly fire, team kills and
suicides are excluded throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import UnknownPlayer
from ..replay.model import MatchRecord
from .config import DEFAULT_CONFIG, FeatureConfig
from .engagements import Engagement, segment_engagements

FEATURE_NAMES = (
    "rat-avg", "rat-var", "ajt-avg", "ajt-var", "drt-avg", "drt-var",
    "v-avg", "v-var", "raa-avg", "raa-var", "aja-avg", "aja-var",
    "isp", "fhp", "precis", "shp", "hgd", "shr",
    "ttk-avg", "ttk-var", "fkp", "otp", "opi", "bkp", "chp", "akpr",
    "fei", "pui",
)

HIT_GROUP_NAMES = (
    "chest", "generic", "head", "neck", "leftArm", "rightArm",
    "leftLeg", "rightLeg", "stomach",
)

OPI_WEIGHTS = (0.5, 1.0, 2.0, 0.5)  # penetrated 1 / 2 / >2 / through smoke


@dataclass
class StructuredVector:
    steam_id: str
    values: np.ndarray  # 28 float64
    mask: np.ndarray    # 28 bool, True = missing

    def as_dict(self) -> dict:
        return {name: (float(v), bool(m)) for name, v, m in zip(FEATURE_NAMES, self.values, self.mask)}


def _mean_var(samples: list[float]) -> tuple[float, float, bool]:
    if not samples:
        return 0.0, 0.0, True
    arr = np.asarray(samples, dtype=np.float64)
    mean = float(arr.sum() / len(arr))
    var = float(((arr - mean) ** 2).sum() / len(arr))
    return mean, var, False


def aiming_features(engagements: list[Engagement]) -> tuple[np.ndarray, np.ndarray]:
    """12 values: mean/variance of rat, ajt, drt, v, raa, aja."""
    rats = [e.rat for e in engagements if e.rat is not None]
    ajts = [e.ajt for e in engagements if e.ajt is not None]
    drts = [e.drt for e in engagements if e.drt is not None]
    vs = [
        e.distance / e.drt
        for e in engagements
        if e.drt is not None and e.distance is not None and e.drt > 0
    ]
    raas = [e.raa for e in engagements if e.raa is not None]
    ajas = [e.aja for e in engagements if e.aja is not None]

    values, mask = [], []
    for samples in (rats, ajts, drts, vs, raas, ajas):
        mean, var, missing = _mean_var(samples)
        values += [mean, var]
        mask += [missing, missing]
    return np.asarray(values), np.asarray(mask, dtype=bool)


def _player_events(match: MatchRecord, steam_id: str):
    damages = [
        d for d in match.damages
        if d.attacker_steam_id == steam_id and not d.is_friendly_fire
        and d.victim_steam_id != steam_id
    ]
    kills = [
        k for k in match.kills
        if k.attacker_steam_id == steam_id and not k.is_suicide and not k.is_teamkill
    ]
    fires = sorted(
        (w for w in match.weapon_fires if w.player_steam_id == steam_id),
        key=lambda w: w.tick,
    )
    return damages, kills, fires


def firing_features(
    match: MatchRecord, steam_id: str, config: FeatureConfig = DEFAULT_CONFIG
) -> tuple[np.ndarray, np.ndarray]:
    """6 values: isp, fhp, precis, shp, hgd, shr."""
    rate = match.tick_rate
    damages, kills, fires = _player_events(match, steam_id)
    fire_times = [w.tick / rate for w in fires]

    values = np.zeros(6)
    mask = np.zeros(6, dtype=bool)

    # isp: kills followed by at least one fire within (t_kill, t_kill + alpha]
    if kills:
        alpha = config.inertial_window_seconds
        hits = 0
        for k in kills:
            tk = k.tick / rate
            if any(tk < tf <= tk + alpha for tf in fire_times):
                hits += 1
        values[0] = hits / len(kills)
    else:
        mask[0] = True

    # fhp: fire rounds split on reloads (magazine grew) or gaps > epsilon;
    # numerator counts fire rounds whose first fire matches a damage tick
    # within the configured tolerance
    if fires:
        gap = config.fire_round_gap_seconds
        first_fires = [fires[0]]
        for prev, cur in zip(fires, fires[1:]):
            reloaded = cur.ammo_in_magazine > prev.ammo_in_magazine
            if reloaded or (cur.tick - prev.tick) / rate > gap:
                first_fires.append(cur)
        tol = config.fhp_match_tolerance_seconds
        damage_times = [d.tick / rate for d in damages]
        matched = 0
        for w in first_fires:
            tf = w.tick / rate
            if any(abs(tf - td) <= tol for td in damage_times):
                matched += 1
        values[1] = matched / len(first_fires)
    else:
        mask[1] = True

    # precis
    if fires:
        values[2] = len(damages) / len(fires)
    else:
        mask[2] = True

    if damages:
        n_dmg = len(damages)
        # shp
        values[3] = sum(1 for d in damages if d.attacker_strafe) / n_dmg
        # hgd: the appendix formulas verbatim (both divisions by damage count)
        counts = {g: 0 for g in HIT_GROUP_NAMES}
        for d in damages:
            if d.hit_group in counts:
                counts[d.hit_group] += 1
        hg_mean = sum(counts.values()) / n_dmg
        values[4] = sum((c - hg_mean) ** 2 for c in counts.values()) / n_dmg
        # shr: a damage is special when it falls in any of the four windows;
        # counting membership (not the overlapping category sum) keeps the
        # ratio within [0, 1]
        scale = config.distance_scale
        special = 0
        for d in damages:
            dist = d.distance * scale
            sniper = d.weapon_class == "sniper"
            head = d.hit_group == "head"
            if (
                (sniper and 50.0 <= dist <= 150.0)
                or (sniper and head and 40.0 <= dist <= 170.0)
                or (not sniper and dist >= 800.0)
                or (not sniper and head and dist >= 700.0)
            ):
                special += 1
        values[5] = special / n_dmg
    else:
        mask[3] = mask[4] = mask[5] = True

    return values, mask


def elimination_features(
    match: MatchRecord, steam_id: str, config: FeatureConfig = DEFAULT_CONFIG
) -> tuple[np.ndarray, np.ndarray]:
    """8 values: ttk-avg, ttk-var, fkp, otp, opi, bkp, chp, akpr."""
    rate = match.tick_rate
    damages, kills, _ = _player_events(match, steam_id)
    n_rounds = len(match.rounds)
    values = np.zeros(8)
    mask = np.zeros(8, dtype=bool)

    # ttk: first damage in a window to the kill, windows capped at 10 s and
    # reset per round; uncompleted windows are dropped
    cap = config.ttk_cap_seconds
    ttks: list[float] = []
    opponents = {d.victim_steam_id for d in damages} | {k.victim_steam_id for k in kills}
    for opp in sorted(opponents):
        for round_num in range(1, n_rounds + 1):
            merged = [
                (d.tick, 0) for d in damages
                if d.victim_steam_id == opp and d.round_num == round_num
            ] + [
                (k.tick, 1) for k in kills
                if k.victim_steam_id == opp and k.round_num == round_num
            ]
            merged.sort()
            window_start = None
            for tick, kind in merged:
                t = tick / rate
                if kind == 0:
                    if window_start is None or t - window_start > cap:
                        window_start = t
                else:
                    if window_start is not None and t - window_start <= cap:
                        ttks.append(t - window_start)
                    window_start = None
    ttk_avg, ttk_var, ttk_missing = _mean_var(ttks)
    values[0], values[1] = ttk_avg, ttk_var
    mask[0] = mask[1] = ttk_missing

    if kills:
        values[2] = sum(1 for k in kills if k.is_first_kill) / n_rounds  # fkp
        n1 = sum(1 for k in kills if k.penetrated_objects == 1)
        n2 = sum(1 for k in kills if k.penetrated_objects == 2)
        n3 = sum(1 for k in kills if k.penetrated_objects > 2)
        ns = sum(1 for k in kills if k.thru_smoke)
        values[4] = (
            OPI_WEIGHTS[0] * n1 + OPI_WEIGHTS[1] * n2 + OPI_WEIGHTS[2] * n3 + OPI_WEIGHTS[3] * ns
        ) / n_rounds  # opi
        values[5] = sum(1 for k in kills if k.attacker_blinded) / len(kills)  # bkp
        values[7] = len(kills) / n_rounds  # akpr
    else:
        mask[2] = mask[4] = mask[5] = mask[7] = True

    # otp: headshot non-sniper kills dealing >= 100 damage in one blow,
    # over damages inflicted with non-sniper weapons
    non_sniper_damages = [d for d in damages if d.weapon_class != "sniper"]
    if non_sniper_damages:
        damage_at = {}
        for d in damages:
            damage_at.setdefault((d.tick, d.victim_steam_id), []).append(d)
        onetaps = 0
        for k in kills:
            if not k.is_headshot or k.weapon_class == "sniper":
                continue
            if any(d.hp_damage >= 100 for d in damage_at.get((k.tick, k.victim_steam_id), [])):
                onetaps += 1
        values[3] = onetaps / len(non_sniper_damages)
    else:
        mask[3] = True

    if damages:
        values[6] = sum(1 for d in damages if d.hit_group == "head") / len(damages)  # chp
    else:
        mask[6] = True

    return values, mask


def props_features(
    match: MatchRecord, steam_id: str, config: FeatureConfig = DEFAULT_CONFIG
) -> tuple[np.ndarray, np.ndarray]:
    """2 values: fei, pui."""
    side = match.player_side(steam_id)
    values = np.zeros(2)
    mask = np.zeros(2, dtype=bool)

    opp_dur = ally_dur = total = 0.0
    for f in match.flashes:
        if f.attacker_steam_id != steam_id:
            continue
        total += f.flash_duration
        if f.player_steam_id == steam_id or f.player_side == side:
            ally_dur += f.flash_duration  # self counts as ally
        else:
            opp_dur += f.flash_duration
    if total > 0:
        values[0] = (opp_dur - ally_dur) / total
    else:
        mask[0] = True

    throws = sum(
        1 for g in match.grenades
        if g.thrower_steam_id == steam_id
        and g.grenade_type in ("HE", "incendiary", "molotov", "smoke", "flash")
    )
    denom = len(match.players) * len(match.rounds) * config.props_capacity
    if denom > 0 and throws > 0:
        values[1] = throws / denom
    elif denom > 0:
        values[1] = 0.0
        mask[1] = True  # no qualifying throws: structural denominator, no events
    else:
        mask[1] = True
    return values, mask


def feature_vector(
    match: MatchRecord, steam_id: str, config: FeatureConfig = DEFAULT_CONFIG
) -> StructuredVector:
    """All 28 features in the canonical order, with the missing mask."""
    if steam_id not in match.steam_ids:
        raise UnknownPlayer(steam_id)
    engagements = segment_engagements(match, steam_id, config)
    aim_v, aim_m = aiming_features(engagements)
    fire_v, fire_m = firing_features(match, steam_id, config)
    elim_v, elim_m = elimination_features(match, steam_id, config)
    prop_v, prop_m = props_features(match, steam_id, config)
    return StructuredVector(
        steam_id=steam_id,
        values=np.concatenate([aim_v, fire_v, elim_v, prop_v]),
        mask=np.concatenate([aim_m, fire_m, elim_m, prop_m]),
    )
