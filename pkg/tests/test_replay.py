"""Replay model: parsing, validation, synthesis, splitting."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hawk.errors import ConfigError, ConsistencyError, SchemaError
from hawk.features.structured import feature_vector
from hawk.replay import (
    CheatProfile,
    generate_synthetic_match,
    parse_labels_json,
    parse_match_json,
    serialize_labels,
    serialize_match,
    split_dataset,
    validate_match,
)


def minimal_match_dict():
    return {
        "matchId": "t1",
        "mapName": "de_test",
        "tickRate": 128,
        "dateUtc": "2025-01-01T00:00:00Z",
        "players": [{"steamId": "a", "side": "CT"}, {"steamId": "b", "side": "T"}],
        "rounds": [
            {"roundNum": 1, "startTick": 0, "freezeTimeEndTick": 384, "endTick": 4000, "winnerSide": "CT"}
        ],
        "damages": [],
        "kills": [],
        "weaponFires": [],
        "flashes": [],
        "grenades": [],
        "frames": [],
        "economy": [],
    }


def damage_dict(**overrides):
    base = {
        "tick": 1000, "seconds": 7.8125, "roundNum": 1,
        "attackerSteamID": "a", "attackerSide": "CT",
        "victimSteamID": "b", "victimSide": "T",
        "attackerX": 0.0, "attackerY": 0.0, "attackerZ": 0.0,
        "victimX": 100.0, "victimY": 0.0, "victimZ": 0.0,
        "attackerViewX": 0.0, "attackerViewY": 0.0,
        "victimViewX": 180.0, "victimViewY": 0.0,
        "attackerStrafe": False, "weapon": "ak47", "weaponClass": "rifle",
        "hpDamage": 27, "hpDamageTaken": 27, "armorDamage": 5, "armorDamageTaken": 5,
        "hitGroup": "chest", "isFriendlyFire": False, "distance": 100.0, "zoomLevel": 0,
    }
    base.update(overrides)
    return base


class TestParse:
    def test_minimal_round_trip(self):
        match = parse_match_json(json.dumps(minimal_match_dict()))
        assert len(match.rounds) == 1
        assert len(match.players) == 2
        assert parse_match_json(serialize_match(match)) == match

    def test_missing_field_names_path(self):
        bad = minimal_match_dict()
        del bad["players"][0]["side"]
        with pytest.raises(SchemaError) as exc:
            parse_match_json(json.dumps(bad))
        assert "players[0].side" in str(exc.value)

    def test_wrong_type_names_path(self):
        bad = minimal_match_dict()
        bad["rounds"][0]["startTick"] = "zero"
        with pytest.raises(SchemaError) as exc:
            parse_match_json(json.dumps(bad))
        assert "rounds[0].startTick" in str(exc.value)

    def test_tick_outside_rounds(self):
        bad = minimal_match_dict()
        bad["damages"] = [damage_dict(tick=9999)]
        with pytest.raises(ConsistencyError) as exc:
            parse_match_json(json.dumps(bad))
        assert "damages[0].tick" in str(exc.value)

    def test_unknown_steam_id(self):
        bad = minimal_match_dict()
        bad["damages"] = [damage_dict(attackerSteamID="ghost")]
        with pytest.raises(ConsistencyError) as exc:
            parse_match_json(json.dumps(bad))
        assert "attackerSteamID" in str(exc.value)

    def test_view_yaw_normalized_modulo_360(self):
        obj = minimal_match_dict()
        obj["damages"] = [damage_dict(attackerViewX=365.0)]
        match = parse_match_json(json.dumps(obj))
        assert match.damages[0].attacker_view_x == pytest.approx(5.0)

    def test_pitch_clamped(self):
        obj = minimal_match_dict()
        obj["damages"] = [damage_dict(attackerViewY=-120.0)]
        match = parse_match_json(json.dumps(obj))
        assert match.damages[0].attacker_view_y == -90.0

    def test_damage_taken_cannot_exceed_damage(self):
        obj = minimal_match_dict()
        obj["damages"] = [damage_dict(hpDamage=10, hpDamageTaken=20)]
        with pytest.raises(ConsistencyError):
            parse_match_json(json.dumps(obj))

    def test_non_contiguous_rounds(self):
        obj = minimal_match_dict()
        obj["rounds"][0]["roundNum"] = 2
        with pytest.raises(ConsistencyError):
            parse_match_json(json.dumps(obj))

    def test_unknown_fields_ignored(self):
        obj = minimal_match_dict()
        obj["somethingNew"] = {"x": 1}
        obj["players"][0]["rank"] = "global"
        match = parse_match_json(json.dumps(obj))
        assert match.players[0].steam_id == "a"

    def test_labels_round_trip_and_invariant(self):
        labels = parse_labels_json(json.dumps({
            "matchId": "t1",
            "labels": [
                {"steamId": "a", "cheater": True, "cheatType": "aimbot", "banDateUtc": "2025-01-02T00:00:00Z"},
                {"steamId": "b", "cheater": False, "cheatType": "none"},
            ],
        }))
        assert parse_labels_json(serialize_labels(labels)) == labels
        with pytest.raises(ConsistencyError):
            parse_labels_json(json.dumps({
                "matchId": "t1",
                "labels": [{"steamId": "a", "cheater": True, "cheatType": "none"}],
            }))


class TestSynth:
    def test_deterministic_byte_identical(self):
        profiles = [CheatProfile() for _ in range(4)]
        m1, l1 = generate_synthetic_match(profiles, rounds=5, seed=7)
        m2, l2 = generate_synthetic_match(profiles, rounds=5, seed=7)
        assert serialize_match(m1) == serialize_match(m2)
        assert serialize_labels(l1) == serialize_labels(l2)

    def test_aimbot_reaction_below_honest(self):
        profiles = [CheatProfile(kind="aimbot")] + [CheatProfile() for _ in range(7)]
        match, labels = generate_synthetic_match(profiles, rounds=6, seed=3)
        rat = {sid: feature_vector(match, sid).values[0] for sid in match.steam_ids}
        cheater = match.steam_ids[0]
        honest_means = [rat[s] for s in match.steam_ids[1:]]
        assert rat[cheater] < min(honest_means)

    def test_wallhack_opi_above_honest(self):
        profiles = [CheatProfile(kind="wallhack")] + [CheatProfile() for _ in range(7)]
        match, labels = generate_synthetic_match(profiles, rounds=6, seed=5)
        opi = {sid: feature_vector(match, sid).values[22] for sid in match.steam_ids}
        cheater = match.steam_ids[0]
        assert opi[cheater] > max(opi[s] for s in match.steam_ids[1:])

    def test_empty_profiles_rejected(self):
        with pytest.raises(ConfigError):
            generate_synthetic_match([], rounds=1, seed=0)

    def test_boosting_label_is_not_cheater(self):
        profiles = [CheatProfile(kind="boosting-like"), CheatProfile()]
        _, labels = generate_synthetic_match(profiles, rounds=1, seed=0)
        assert labels.labels[0].cheater is False
        assert labels.labels[0].cheat_type == "none"

    @settings(max_examples=10, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32))
    def test_generated_matches_validate(self, seed):
        profiles = [CheatProfile(kind="aimbot"), CheatProfile(kind="wallhack")] + [
            CheatProfile() for _ in range(4)
        ]
        match, _ = generate_synthetic_match(profiles, rounds=2, seed=seed, play_seconds=(8.0, 12.0))
        validate_match(match)  # raises on any invariant violation
        assert parse_match_json(serialize_match(match)) == match


class TestStreamSchemaFile:
    def test_shipped_schema_matches_code(self):
        import importlib.resources
        import json as _json

        from hawk.features.streams import schema_dict

        shipped = _json.loads(
            importlib.resources.files("hawk.features").joinpath("stream_schema.json").read_text()
        )
        assert shipped == schema_dict()


class TestSplit:
    def _items(self, n):
        return [
            generate_synthetic_match([CheatProfile(), CheatProfile()], 1, seed=i,
                                     date_utc=f"2025-01-{i + 1:02d}T00:00:00Z",
                                     play_seconds=(6.0, 8.0))
            for i in range(n)
        ]

    def test_sizes(self):
        items = self._items(10)
        splits = split_dataset(items, (0.6, 0.2, 0.2))
        assert (len(splits["train"]), len(splits["validation"]), len(splits["test"])) == (6, 2, 2)

    def test_partition(self):
        items = self._items(9)
        splits = split_dataset(items, (0.5, 0.3, 0.2), seed=4)
        ids = lambda part: {m.match_id for m, _ in part}
        all_ids = ids(splits["train"]) | ids(splits["validation"]) | ids(splits["test"])
        assert all_ids == ids(items)
        assert not ids(splits["train"]) & ids(splits["validation"])
        assert not ids(splits["validation"]) & ids(splits["test"])
        assert not ids(splits["train"]) & ids(splits["test"])

    def test_by_date_ordering(self):
        items = self._items(10)
        splits = split_dataset(items, (0.6, 0.2, 0.2), by_date=True)
        max_train = max(m.date_utc for m, _ in splits["train"])
        min_val = min(m.date_utc for m, _ in splits["validation"])
        assert max_train <= min_val

    def test_same_seed_same_split(self):
        items = self._items(8)
        a = split_dataset(items, (0.5, 0.25, 0.25), seed=9)
        b = split_dataset(items, (0.5, 0.25, 0.25), seed=9)
        assert [m.match_id for m, _ in a["train"]] == [m.match_id for m, _ in b["train"]]

    def test_negative_ratio_rejected(self):
        with pytest.raises(ConfigError):
            split_dataset(self._items(2), (-0.5, 1.0, 0.5))

    def test_ratios_must_sum_to_one(self):
        with pytest.raises(ConfigError):
            split_dataset(self._items(2), (0.5, 0.2, 0.2))
