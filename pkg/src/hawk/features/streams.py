"""The seven per-player temporal feature streams.

Each stream is a fixed-width float64 matrix, rows sorted by tick (economy by
round). Booleans are 0/1, enums ordinal per the published column maps below;
the same maps ship as ``stream_schema.json`` for consumers outside Python.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import UnknownPlayer
from ..replay.model import GRENADE_TYPES, HIT_GROUPS, MatchRecord, WEAPON_CLASSES
from .config import DEFAULT_CONFIG, FeatureConfig

STREAM_SCHEMA_VERSION = 1

STREAM_NAMES = (
    "damage",
    "auxiliaryProps",
    "offensiveProps",
    "elimination",
    "weaponFire",
    "movement",
    "economy",
)

DAMAGE_COLUMNS = (
    "seconds", "roundNum",
    "attackerX", "attackerY", "attackerZ", "victimX", "victimY", "victimZ",
    "attackerViewX", "attackerViewY", "victimViewX", "victimViewY",
    "attackerStrafe", "weaponClass", "hpDamage", "hpDamageTaken",
    "armorDamage", "armorDamageTaken", "hitGroup", "isFriendlyFire",
    "distance", "zoomLevel",
)

ELIMINATION_COLUMNS = (
    "seconds", "roundNum",
    "attackerX", "attackerY", "attackerZ", "victimX", "victimY", "victimZ",
    "attackerViewX", "attackerViewY", "victimViewX", "victimViewY",
    "distance", "weaponClass", "isSuicide", "isTeamkill", "isWallbang",
    "penetratedObjects", "isFirstKill", "isHeadshot", "victimBlinded",
    "attackerBlinded", "noScope", "thruSmoke", "isTrade",
)

WEAPON_FIRE_COLUMNS = (
    "seconds", "roundNum",
    "playerX", "playerY", "playerZ", "playerViewX", "playerViewY",
    "playerStrafe", "weaponClass", "zoomLevel", "ammoInMagazine", "ammoInReserve",
)

AUXILIARY_COLUMNS = ("seconds", "roundNum", "targetIsOpponent", "targetIsSelf", "flashDuration")

OFFENSIVE_COLUMNS = (
    "throwSeconds", "destroySeconds", "roundNum", "grenadeType",
    "grenadeX", "grenadeY", "grenadeZ",
)

MOVEMENT_COLUMNS = (
    "seconds", "roundNum", "x", "y", "z", "viewX", "viewY",
    "velocityX", "velocityY", "velocityZ",
    "isAlive", "isBlinded", "isAirborne", "isDucking", "isDuckingInProgress",
    "isUnDuckingInProgress", "isDefusing", "isPlanting", "isReloading",
    "isInBombZone", "isStanding", "isScoped", "isWalking", "isolationDegree",
)

ECONOMY_COLUMNS = (
    "roundNum", "equipmentValueFreezetimeEnd", "equipmentValueRoundStart",
    "cash", "cashSpendTotal",
)

STREAM_COLUMNS = {
    "damage": DAMAGE_COLUMNS,
    "auxiliaryProps": AUXILIARY_COLUMNS,
    "offensiveProps": OFFENSIVE_COLUMNS,
    "elimination": ELIMINATION_COLUMNS,
    "weaponFire": WEAPON_FIRE_COLUMNS,
    "movement": MOVEMENT_COLUMNS,
    "economy": ECONOMY_COLUMNS,
}


def _ordinal(value: str, table: tuple[str, ...]) -> float:
    try:
        return float(table.index(value))
    except ValueError:
        return -1.0


@dataclass
class TemporalStreams:
    """Seven fixed-width row matrices for one (match, player)."""

    steam_id: str
    streams: dict[str, np.ndarray]

    def __getitem__(self, name: str) -> np.ndarray:
        return self.streams[name]


def round_seconds(tick: int, round_num: int, starts: dict[int, int], tick_rate: int) -> float:
    return (tick - starts.get(round_num, 0)) / tick_rate


def extract_streams(
    match: MatchRecord, steam_id: str, config: FeatureConfig = DEFAULT_CONFIG
) -> TemporalStreams:
    """Build all seven streams for one player of the match."""
    if steam_id not in match.steam_ids:
        raise UnknownPlayer(steam_id)
    starts = {r.round_num: r.start_tick for r in match.rounds}
    rate = match.tick_rate

    def secs(tick: int, rn: int) -> float:
        return round_seconds(tick, rn, starts, rate)

    dmg_rows = []
    for d in sorted((d for d in match.damages if d.attacker_steam_id == steam_id), key=lambda e: e.tick):
        dmg_rows.append([
            secs(d.tick, d.round_num), d.round_num,
            d.attacker_x, d.attacker_y, d.attacker_z, d.victim_x, d.victim_y, d.victim_z,
            d.attacker_view_x, d.attacker_view_y, d.victim_view_x, d.victim_view_y,
            float(d.attacker_strafe), _ordinal(d.weapon_class, WEAPON_CLASSES),
            d.hp_damage, d.hp_damage_taken, d.armor_damage, d.armor_damage_taken,
            _ordinal(d.hit_group, HIT_GROUPS), float(d.is_friendly_fire),
            d.distance, d.zoom_level,
        ])

    kill_rows = []
    for k in sorted((k for k in match.kills if k.attacker_steam_id == steam_id), key=lambda e: e.tick):
        kill_rows.append([
            secs(k.tick, k.round_num), k.round_num,
            k.attacker_x, k.attacker_y, k.attacker_z, k.victim_x, k.victim_y, k.victim_z,
            k.attacker_view_x, k.attacker_view_y, k.victim_view_x, k.victim_view_y,
            k.distance, _ordinal(k.weapon_class, WEAPON_CLASSES),
            float(k.is_suicide), float(k.is_teamkill), float(k.is_wallbang),
            k.penetrated_objects, float(k.is_first_kill), float(k.is_headshot),
            float(k.victim_blinded), float(k.attacker_blinded),
            float(k.no_scope), float(k.thru_smoke), float(k.is_trade),
        ])

    fire_rows = []
    for w in sorted((w for w in match.weapon_fires if w.player_steam_id == steam_id), key=lambda e: e.tick):
        fire_rows.append([
            secs(w.tick, w.round_num), w.round_num,
            w.player_x, w.player_y, w.player_z, w.player_view_x, w.player_view_y,
            float(w.player_strafe), _ordinal(w.weapon_class, WEAPON_CLASSES),
            w.zoom_level, w.ammo_in_magazine, w.ammo_in_reserve,
        ])

    side = match.player_side(steam_id)
    flash_rows = []
    for f in sorted((f for f in match.flashes if f.attacker_steam_id == steam_id), key=lambda e: e.tick):
        flash_rows.append([
            secs(f.tick, f.round_num), f.round_num,
            float(f.player_side != side), float(f.player_steam_id == steam_id),
            f.flash_duration,
        ])

    nade_rows = []
    for g in sorted((g for g in match.grenades if g.thrower_steam_id == steam_id), key=lambda e: e.throw_tick):
        nade_rows.append([
            secs(g.throw_tick, g.round_num), secs(g.destroy_tick, g.round_num), g.round_num,
            _ordinal(g.grenade_type, GRENADE_TYPES), g.grenade_x, g.grenade_y, g.grenade_z,
        ])

    stride = max(1, config.movement_stride_ticks)
    move_rows = []
    for fr in match.frames:
        if fr.tick % stride != 0:
            continue
        for p in fr.players:
            if p.steam_id != steam_id:
                continue
            move_rows.append([
                secs(fr.tick, fr.round_num), fr.round_num,
                p.x, p.y, p.z, p.view_x, p.view_y,
                p.velocity_x, p.velocity_y, p.velocity_z,
                float(p.is_alive), float(p.is_blinded), float(p.is_airborne),
                float(p.is_ducking), float(p.is_ducking_in_progress),
                float(p.is_un_ducking_in_progress), float(p.is_defusing),
                float(p.is_planting), float(p.is_reloading), float(p.is_in_bomb_zone),
                float(p.is_standing), float(p.is_scoped), float(p.is_walking),
                p.isolation_degree,
            ])
            break

    eco_rows = []
    for e in sorted((e for e in match.economy if e.steam_id == steam_id), key=lambda r: r.round_num):
        eco_rows.append([
            e.round_num, e.equipment_value_freezetime_end, e.equipment_value_round_start,
            e.cash, e.cash_spend_total,
        ])

    def mat(rows, cols):
        if not rows:
            return np.zeros((0, len(cols)), dtype=np.float64)
        return np.asarray(rows, dtype=np.float64)

    return TemporalStreams(
        steam_id=steam_id,
        streams={
            "damage": mat(dmg_rows, DAMAGE_COLUMNS),
            "auxiliaryProps": mat(flash_rows, AUXILIARY_COLUMNS),
            "offensiveProps": mat(nade_rows, OFFENSIVE_COLUMNS),
            "elimination": mat(kill_rows, ELIMINATION_COLUMNS),
            "weaponFire": mat(fire_rows, WEAPON_FIRE_COLUMNS),
            "movement": mat(move_rows, MOVEMENT_COLUMNS),
            "economy": mat(eco_rows, ECONOMY_COLUMNS),
        },
    )


def schema_dict() -> dict:
    return {
        "version": STREAM_SCHEMA_VERSION,
        "streams": {name: list(cols) for name, cols in STREAM_COLUMNS.items()},
        "enums": {
            "weaponClass": list(WEAPON_CLASSES),
            "hitGroup": list(HIT_GROUPS),
            "grenadeType": list(GRENADE_TYPES),
        },
    }
