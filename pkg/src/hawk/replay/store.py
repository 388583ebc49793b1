"""Dataset directory layout: matches/*.json and labels/*.json, one per match."""

from __future__ import annotations

from pathlib import Path

from .model import LabelSet, MatchRecord
from .parse import parse_labels_json, parse_match_json, serialize_labels, serialize_match


def write_dataset(root: str | Path, pairs: list[tuple[MatchRecord, LabelSet]]) -> None:
    root = Path(root)
    (root / "matches").mkdir(parents=True, exist_ok=True)
    (root / "labels").mkdir(parents=True, exist_ok=True)
    for match, labels in pairs:
        (root / "matches" / f"{match.match_id}.json").write_text(serialize_match(match))
        (root / "labels" / f"{match.match_id}.json").write_text(serialize_labels(labels))


def read_dataset(root: str | Path) -> list[tuple[MatchRecord, LabelSet | None]]:
    root = Path(root)
    pairs = []
    for path in sorted((root / "matches").glob("*.json")):
        match = parse_match_json(path.read_bytes())
        label_path = root / "labels" / path.name
        labels = parse_labels_json(label_path.read_bytes()) if label_path.exists() else None
        pairs.append((match, labels))
    return pairs
