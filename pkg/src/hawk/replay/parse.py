"""Match/label JSON ingestion, validation and serialization.

The canonical schema is a single top-level object per match (see README);
unknown fields are ignored, required fields raise SchemaError with the
offending path, cross-field violations raise ConsistencyError.
"""

from __future__ import annotations

import json
from dataclasses import asdict, fields
from typing import Any

from ..errors import ConsistencyError, SchemaError
from .model import (
    CHEAT_TYPES,
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
    clamp_pitch,
    normalize_yaw,
)

_BOOL = "bool"
_INT = "int"
_FLOAT = "float"
_STR = "str"
_OPT_STR = "str?"


def _camel(name: str) -> str:
    head, *rest = name.split("_")
    out = head + "".join(part.capitalize() for part in rest)
    # JSON uses the replay library's capitalization for steam ids.
    return out.replace("SteamId", "SteamID")


def _get(obj: dict, key: str, kind: str, path: str) -> Any:
    if key not in obj:
        if kind == _OPT_STR:
            return None
        raise SchemaError(f"{path}.{key}", "missing required field")
    val = obj[key]
    if kind == _BOOL:
        if not isinstance(val, bool):
            raise SchemaError(f"{path}.{key}", f"expected bool, got {type(val).__name__}")
        return val
    if kind == _INT:
        if isinstance(val, bool) or not isinstance(val, int):
            raise SchemaError(f"{path}.{key}", f"expected int, got {type(val).__name__}")
        return val
    if kind == _FLOAT:
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise SchemaError(f"{path}.{key}", f"expected number, got {type(val).__name__}")
        return float(val)
    if kind in (_STR, _OPT_STR):
        if val is None and kind == _OPT_STR:
            return None
        if not isinstance(val, str):
            raise SchemaError(f"{path}.{key}", f"expected string, got {type(val).__name__}")
        return val
    raise AssertionError(kind)


_FIELD_KINDS = {
    bool: _BOOL,
    int: _INT,
    float: _FLOAT,
    str: _STR,
}


def _parse_flat(cls, obj: dict, path: str, view_keys: tuple[str, ...] = ()):
    """Parse a flat dataclass from a JSON object by field introspection."""
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected object, got {type(obj).__name__}")
    kwargs = {}
    for f in fields(cls):
        key = _camel(f.name)
        if f.type in ("str | None", "typing.Optional[str]"):
            kind = _OPT_STR
        else:
            base = {"bool": _BOOL, "int": _INT, "float": _FLOAT, "str": _STR}
            kind = base[f.type] if isinstance(f.type, str) else _FIELD_KINDS[f.type]
        val = _get(obj, key, kind, path)
        if val is not None and f.name in view_keys:
            val = normalize_yaw(val) if f.name.endswith("view_x") else clamp_pitch(val)
        kwargs[f.name] = val
    return cls(**kwargs)


_DMG_VIEWS = ("attacker_view_x", "attacker_view_y", "victim_view_x", "victim_view_y")
_WF_VIEWS = ("player_view_x", "player_view_y")
_FRAME_VIEWS = ("view_x", "view_y")


def _require_list(obj: dict, key: str, path: str = "") -> list:
    loc = f"{path}.{key}" if path else key
    if key not in obj:
        raise SchemaError(loc, "missing required field")
    if not isinstance(obj[key], list):
        raise SchemaError(loc, f"expected array, got {type(obj[key]).__name__}")
    return obj[key]


def parse_match_json(data: bytes | str) -> MatchRecord:
    """Parse and validate one match. Raises SchemaError / ConsistencyError."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise SchemaError("$", "top level must be an object")

    match_id = _get(obj, "matchId", _STR, "$")
    map_name = _get(obj, "mapName", _STR, "$")
    tick_rate = _get(obj, "tickRate", _INT, "$")
    date_utc = _get(obj, "dateUtc", _STR, "$")
    if tick_rate <= 0:
        raise ConsistencyError("tickRate", "tick rate must be positive")

    players = tuple(
        _parse_flat(PlayerRef, p, f"players[{i}]")
        for i, p in enumerate(_require_list(obj, "players"))
    )
    rounds = tuple(
        _parse_flat(RoundRecord, r, f"rounds[{i}]")
        for i, r in enumerate(_require_list(obj, "rounds"))
    )
    damages = tuple(
        _parse_flat(DamageEvent, d, f"damages[{i}]", _DMG_VIEWS)
        for i, d in enumerate(_require_list(obj, "damages"))
    )
    kills = tuple(
        _parse_flat(KillEvent, k, f"kills[{i}]", _DMG_VIEWS)
        for i, k in enumerate(_require_list(obj, "kills"))
    )
    weapon_fires = tuple(
        _parse_flat(WeaponFireEvent, w, f"weaponFires[{i}]", _WF_VIEWS)
        for i, w in enumerate(_require_list(obj, "weaponFires"))
    )
    flashes = tuple(
        _parse_flat(FlashEvent, f, f"flashes[{i}]")
        for i, f in enumerate(_require_list(obj, "flashes"))
    )
    grenades = tuple(
        _parse_flat(GrenadeEvent, g, f"grenades[{i}]")
        for i, g in enumerate(_require_list(obj, "grenades"))
    )
    frames = []
    for i, fr in enumerate(_require_list(obj, "frames")):
        path = f"frames[{i}]"
        tick = _get(fr, "tick", _INT, path)
        round_num = _get(fr, "roundNum", _INT, path)
        entries = tuple(
            _parse_flat(PlayerFrame, p, f"{path}.players[{j}]", _FRAME_VIEWS)
            for j, p in enumerate(_require_list(fr, "players", path))
        )
        frames.append(MovementFrame(tick=tick, round_num=round_num, players=entries))
    economy = tuple(
        _parse_flat(EconomyRecord, e, f"economy[{i}]")
        for i, e in enumerate(_require_list(obj, "economy"))
    )

    match = MatchRecord(
        match_id=match_id,
        map_name=map_name,
        tick_rate=tick_rate,
        date_utc=date_utc,
        players=players,
        rounds=rounds,
        damages=damages,
        kills=kills,
        weapon_fires=weapon_fires,
        flashes=flashes,
        grenades=grenades,
        frames=tuple(frames),
        economy=tuple(economy),
    )
    validate_match(match)
    return match


def validate_match(match: MatchRecord) -> None:
    """Enforce cross-field invariants; raises ConsistencyError."""
    if match.tick_rate <= 0:
        raise ConsistencyError("tickRate", "tick rate must be positive")
    known = set(match.steam_ids)
    if len(known) != len(match.players):
        raise ConsistencyError("players", "duplicate steamId")

    for i, rnd in enumerate(match.rounds):
        if rnd.round_num != i + 1:
            raise ConsistencyError(f"rounds[{i}].roundNum", "round numbers must be contiguous from 1")
        if not rnd.start_tick <= rnd.freeze_time_end_tick <= rnd.end_tick:
            raise ConsistencyError(f"rounds[{i}]", "expected startTick <= freezeTimeEndTick <= endTick")

    spans = [(r.start_tick, r.end_tick) for r in match.rounds]

    def check_tick(tick: int, path: str):
        if not any(lo <= tick <= hi for lo, hi in spans):
            raise ConsistencyError(path, f"tick {tick} outside all rounds")

    def check_player(steam_id: str | None, path: str):
        if steam_id is not None and steam_id not in known:
            raise ConsistencyError(path, f"unknown steamId {steam_id}")

    for i, d in enumerate(match.damages):
        check_tick(d.tick, f"damages[{i}].tick")
        check_player(d.attacker_steam_id, f"damages[{i}].attackerSteamID")
        check_player(d.victim_steam_id, f"damages[{i}].victimSteamID")
        if d.hp_damage_taken > d.hp_damage:
            raise ConsistencyError(f"damages[{i}].hpDamageTaken", "exceeds hpDamage")
    for i, k in enumerate(match.kills):
        check_tick(k.tick, f"kills[{i}].tick")
        check_player(k.attacker_steam_id, f"kills[{i}].attackerSteamID")
        check_player(k.victim_steam_id, f"kills[{i}].victimSteamID")
        check_player(k.assister_steam_id, f"kills[{i}].assisterSteamID")
        check_player(k.flash_thrower_steam_id, f"kills[{i}].flashThrowerSteamID")
        if k.penetrated_objects < 0:
            raise ConsistencyError(f"kills[{i}].penetratedObjects", "must be >= 0")
    for i, w in enumerate(match.weapon_fires):
        check_tick(w.tick, f"weaponFires[{i}].tick")
        check_player(w.player_steam_id, f"weaponFires[{i}].playerSteamID")
    for i, f in enumerate(match.flashes):
        check_tick(f.tick, f"flashes[{i}].tick")
        check_player(f.attacker_steam_id, f"flashes[{i}].attackerSteamID")
        check_player(f.player_steam_id, f"flashes[{i}].playerSteamID")
        if f.flash_duration < 0:
            raise ConsistencyError(f"flashes[{i}].flashDuration", "must be >= 0")
    for i, g in enumerate(match.grenades):
        check_tick(g.throw_tick, f"grenades[{i}].throwTick")
        check_player(g.thrower_steam_id, f"grenades[{i}].throwerSteamID")
        if g.destroy_tick < g.throw_tick:
            raise ConsistencyError(f"grenades[{i}].destroyTick", "destroyTick before throwTick")
    for i, fr in enumerate(match.frames):
        check_tick(fr.tick, f"frames[{i}].tick")
        for j, p in enumerate(fr.players):
            check_player(p.steam_id, f"frames[{i}].players[{j}].steamId")
    for i, e in enumerate(match.economy):
        check_player(e.steam_id, f"economy[{i}].steamId")
        for name in ("equipment_value_freezetime_end", "equipment_value_round_start", "cash", "cash_spend_total"):
            if getattr(e, name) < 0:
                raise ConsistencyError(f"economy[{i}].{_camel(name)}", "must be >= 0")


def _to_json_obj(value: Any) -> Any:
    if isinstance(value, dict):
        return {_camel(k): _to_json_obj(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_json_obj(v) for v in value]
    return value


def serialize_match(match: MatchRecord) -> str:
    """Canonical JSON form; parse(serialize(m)) round-trips exactly."""
    raw = asdict(match)
    obj = _to_json_obj(raw)
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def parse_labels_json(data: bytes | str) -> LabelSet:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    match_id = _get(obj, "matchId", _STR, "$")
    labels = []
    for i, lab in enumerate(_require_list(obj, "labels")):
        path = f"labels[{i}]"
        entry = PlayerLabel(
            steam_id=_get(lab, "steamId", _STR, path),
            cheater=_get(lab, "cheater", _BOOL, path),
            cheat_type=_get(lab, "cheatType", _STR, path),
            ban_date_utc=_get(lab, "banDateUtc", _OPT_STR, path),
        )
        if entry.cheat_type not in CHEAT_TYPES:
            raise SchemaError(f"{path}.cheatType", f"unknown cheat type {entry.cheat_type!r}")
        if (entry.cheat_type == "none") != (not entry.cheater):
            raise ConsistencyError(path, "cheatType none iff cheater false")
        labels.append(entry)
    return LabelSet(match_id=match_id, labels=tuple(labels))


def serialize_labels(labels: LabelSet) -> str:
    obj = {
        "matchId": labels.match_id,
        "labels": [
            {
                "steamId": lab.steam_id,
                "cheater": lab.cheater,
                "cheatType": lab.cheat_type,
                **({"banDateUtc": lab.ban_date_utc} if lab.ban_date_utc is not None else {}),
            }
            for lab in labels.labels
        ],
    }
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)
