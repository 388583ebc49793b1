"""Versioned model containers: one .bin file = npz archive + JSON config."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

SCHEMA_VERSION = 1


def save_container(path: str | Path, kind: str, config: dict, arrays: dict[str, np.ndarray]) -> None:
    meta = json.dumps({"schemaVersion": SCHEMA_VERSION, "kind": kind, "config": config}, sort_keys=True)
    payload = {"__meta__": np.frombuffer(meta.encode("utf-8"), dtype=np.uint8)}
    payload.update(arrays)
    with open(path, "wb") as fh:
        np.savez(fh, **payload)


def load_container(path: str | Path) -> tuple[str, dict, dict[str, np.ndarray]]:
    with np.load(path) as data:
        meta = json.loads(bytes(data["__meta__"]).decode("utf-8"))
        if meta.get("schemaVersion") != SCHEMA_VERSION:
            raise ValueError(f"unsupported checkpoint schema {meta.get('schemaVersion')}")
        arrays = {k: data[k] for k in data.files if k != "__meta__"}
    return meta["kind"], meta["config"], arrays
