"""Canonical in-memory representation of one parsed replay.

Field names mirror the match JSON schema one-to-one (camelCase in JSON,
snake_case here). Events carry their own positions/views; movement frames
are the per-tick world state sampled at the emitter's stride.
"""

from __future__ import annotations

from dataclasses import dataclass, field

SIDES = ("CT", "T")

HIT_GROUPS = (
    "chest",
    "generic",
    "head",
    "neck",
    "leftArm",
    "rightArm",
    "leftLeg",
    "rightLeg",
    "stomach",
)

WEAPON_CLASSES = ("pistol", "smg", "rifle", "sniper", "heavy", "grenade", "knife")

GRENADE_TYPES = ("HE", "flash", "smoke", "incendiary", "molotov", "decoy")

CHEAT_TYPES = ("none", "aimbot", "wallhack")


@dataclass(frozen=True)
class PlayerRef:
    steam_id: str
    side: str


@dataclass(frozen=True)
class RoundRecord:
    round_num: int
    start_tick: int
    freeze_time_end_tick: int
    end_tick: int
    winner_side: str


@dataclass(frozen=True)
class DamageEvent:
    tick: int
    seconds: float
    round_num: int
    attacker_steam_id: str
    attacker_side: str
    victim_steam_id: str
    victim_side: str
    attacker_x: float
    attacker_y: float
    attacker_z: float
    victim_x: float
    victim_y: float
    victim_z: float
    attacker_view_x: float
    attacker_view_y: float
    victim_view_x: float
    victim_view_y: float
    attacker_strafe: bool
    weapon: str
    weapon_class: str
    hp_damage: int
    hp_damage_taken: int
    armor_damage: int
    armor_damage_taken: int
    hit_group: str
    is_friendly_fire: bool
    distance: float
    zoom_level: int


@dataclass(frozen=True)
class KillEvent:
    tick: int
    seconds: float
    round_num: int
    attacker_steam_id: str
    attacker_side: str
    victim_steam_id: str
    victim_side: str
    attacker_x: float
    attacker_y: float
    attacker_z: float
    victim_x: float
    victim_y: float
    victim_z: float
    attacker_view_x: float
    attacker_view_y: float
    victim_view_x: float
    victim_view_y: float
    distance: float
    weapon: str
    weapon_class: str
    assister_steam_id: str | None
    assister_side: str | None
    is_suicide: bool
    is_teamkill: bool
    is_wallbang: bool
    penetrated_objects: int
    is_first_kill: bool
    is_headshot: bool
    victim_blinded: bool
    attacker_blinded: bool
    flash_thrower_steam_id: str | None
    flash_thrower_side: str | None
    no_scope: bool
    thru_smoke: bool
    is_trade: bool


@dataclass(frozen=True)
class WeaponFireEvent:
    tick: int
    seconds: float
    round_num: int
    player_steam_id: str
    player_side: str
    player_x: float
    player_y: float
    player_z: float
    player_view_x: float
    player_view_y: float
    player_strafe: bool
    weapon: str
    weapon_class: str
    zoom_level: int
    ammo_in_magazine: int
    ammo_in_reserve: int


@dataclass(frozen=True)
class FlashEvent:
    tick: int
    seconds: float
    round_num: int
    attacker_steam_id: str
    attacker_side: str
    player_steam_id: str
    player_side: str
    flash_duration: float


@dataclass(frozen=True)
class GrenadeEvent:
    throw_tick: int
    destroy_tick: int
    throw_seconds: float
    destroy_seconds: float
    round_num: int
    thrower_steam_id: str
    thrower_side: str
    grenade_type: str
    grenade_x: float
    grenade_y: float
    grenade_z: float


@dataclass(frozen=True)
class PlayerFrame:
    steam_id: str
    side: str
    x: float
    y: float
    z: float
    view_x: float
    view_y: float
    velocity_x: float
    velocity_y: float
    velocity_z: float
    is_alive: bool
    is_blinded: bool
    is_airborne: bool
    is_ducking: bool
    is_ducking_in_progress: bool
    is_un_ducking_in_progress: bool
    is_defusing: bool
    is_planting: bool
    is_reloading: bool
    is_in_bomb_zone: bool
    is_standing: bool
    is_scoped: bool
    is_walking: bool
    isolation_degree: float


@dataclass(frozen=True)
class MovementFrame:
    tick: int
    round_num: int
    players: tuple[PlayerFrame, ...]


@dataclass(frozen=True)
class EconomyRecord:
    round_num: int
    steam_id: str
    equipment_value_freezetime_end: int
    equipment_value_round_start: int
    cash: int
    cash_spend_total: int


@dataclass(frozen=True)
class MatchRecord:
    match_id: str
    map_name: str
    tick_rate: int
    date_utc: str
    players: tuple[PlayerRef, ...]
    rounds: tuple[RoundRecord, ...]
    damages: tuple[DamageEvent, ...]
    kills: tuple[KillEvent, ...]
    weapon_fires: tuple[WeaponFireEvent, ...]
    flashes: tuple[FlashEvent, ...]
    grenades: tuple[GrenadeEvent, ...]
    frames: tuple[MovementFrame, ...]
    economy: tuple[EconomyRecord, ...]

    def player_side(self, steam_id: str) -> str:
        for p in self.players:
            if p.steam_id == steam_id:
                return p.side
        raise KeyError(steam_id)

    @property
    def steam_ids(self) -> tuple[str, ...]:
        return tuple(p.steam_id for p in self.players)


@dataclass(frozen=True)
class PlayerLabel:
    steam_id: str
    cheater: bool
    cheat_type: str
    ban_date_utc: str | None = None


@dataclass(frozen=True)
class LabelSet:
    match_id: str
    labels: tuple[PlayerLabel, ...]

    def for_player(self, steam_id: str) -> PlayerLabel:
        for lab in self.labels:
            if lab.steam_id == steam_id:
                return lab
        raise KeyError(steam_id)


@dataclass(frozen=True)
class CheatProfile:
    """Per-player behavior configuration for the synthetic generator.

    ``sophistication`` 0 is a blatant cheater, 1 is indistinguishable from
    the honest baseline; every cheat parameter is interpolated between the
    honest value and the blatant value by (1 - sophistication).
    """

    kind: str = "honest"  # honest | aimbot | wallhack | boosting-like
    sophistication: float = 0.0
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("honest", "aimbot", "wallhack", "boosting-like"):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if not 0.0 <= self.sophistication <= 1.0:
            raise ValueError("sophistication must lie in [0, 1]")


def normalize_yaw(yaw: float) -> float:
    """Wrap yaw into [0, 360)."""
    return yaw % 360.0


def clamp_pitch(pitch: float) -> float:
    """Clamp pitch into [-90, 90]."""
    return max(-90.0, min(90.0, pitch))
