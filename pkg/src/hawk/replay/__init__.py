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
)
from .parse import (
    parse_labels_json,
    parse_match_json,
    serialize_labels,
    serialize_match,
    validate_match,
)
from .split import split_dataset
from .store import read_dataset, write_dataset
from .synth import generate_synthetic_match, resolve_params

__all__ = [
    "CheatProfile",
    "DamageEvent",
    "EconomyRecord",
    "FlashEvent",
    "GrenadeEvent",
    "KillEvent",
    "LabelSet",
    "MatchRecord",
    "MovementFrame",
    "PlayerFrame",
    "PlayerLabel",
    "PlayerRef",
    "RoundRecord",
    "WeaponFireEvent",
    "parse_labels_json",
    "parse_match_json",
    "serialize_labels",
    "serialize_match",
    "validate_match",
    "split_dataset",
    "read_dataset",
    "write_dataset",
    "generate_synthetic_match",
    "resolve_params",
]
