"""Point-of-view review subsystem.

Seven per-stream LSTM-attention encoders produce pooled embeddings that are
concatenated (economy, movement, damage, elimination, auxiliary, offensive,
weapon-fire order) into the POV vector; nine forests, each fitted on one
balanced subsample, vote by majority.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateClass, UntrainedModel
from .features.streams import STREAM_COLUMNS
from .learn.checkpoint import load_container, save_container
from .learn.encoder import EncoderConfig, SequenceEncoder
from .learn.forest import Forest
from .learn.net import train_binary

EMBED_ORDER = (
    "economy",
    "movement",
    "damage",
    "elimination",
    "auxiliaryProps",
    "offensiveProps",
    "weaponFire",
)

N_FORESTS = 9


def majority_vote(votes) -> int:
    """Majority over binary votes; a tie goes to class 0 (honest)."""
    votes = np.asarray(votes, dtype=np.int64)
    ones = int(votes.sum())
    zeros = len(votes) - ones
    return 1 if ones > zeros else 0


def multi_subsample(labels: np.ndarray, seed: int, k: int | None = None) -> list[np.ndarray]:
    """K balanced index sets: all cheaters plus a fresh draw of honest samples.

    K defaults to round(#honest / #cheater) clamped to [1, 15]. Honest draws
    stay unique across iterations until the pool is exhausted, then continue
    from a fresh shuffle (still unique within one set).
    """
    labels = np.asarray(labels, dtype=np.int64)
    pos_idx = np.flatnonzero(labels == 1)
    neg_idx = np.flatnonzero(labels == 0)
    if len(pos_idx) == 0 or len(neg_idx) == 0:
        raise DegenerateClass("multi-subsampling requires both classes")
    if k is None:
        k = int(np.floor(len(neg_idx) / len(pos_idx) + 0.5))
        k = min(15, max(1, k))
    rng = np.random.Generator(np.random.PCG64(seed))
    pool = rng.permutation(neg_idx)
    cursor = 0
    sets = []
    for _ in range(k):
        chosen: list[int] = []
        seen = set()
        while len(chosen) < len(pos_idx):
            if cursor >= len(pool):
                pool = rng.permutation(neg_idx)
                cursor = 0
            cand = int(pool[cursor])
            cursor += 1
            if cand in seen:
                continue
            seen.add(cand)
            chosen.append(cand)
        sets.append(np.concatenate([pos_idx, np.asarray(chosen, dtype=np.int64)]))
    return sets


@dataclass
class RevPovConfig:
    hidden: int = 32
    layers: int = 2
    dropout: float = 0.2
    dense_dim: int = 32
    out_dim: int = 16
    max_len: int = 512
    encoder_epochs: int = 3
    encoder_lr: float = 1e-3
    pos_weight: float = 9.0
    n_forests: int = N_FORESTS
    forest_trees: int = 100
    forest_depth: int = 12
    seed: int = 0


class RevPovModel:
    """Seven trained encoders + per-stream normalization + nine forests."""

    def __init__(self, config: RevPovConfig):
        self.config = config
        self.encoders: dict[str, SequenceEncoder] = {}
        self.norms: dict[str, tuple[np.ndarray, np.ndarray]] = {}
        self.forests: list[Forest] = []
        self.version = "untrained"

    @property
    def embed_dim(self) -> int:
        return len(EMBED_ORDER) * self.config.out_dim

    def normalize(self, name: str, seq: np.ndarray) -> np.ndarray:
        mean, std = self.norms[name]
        return (seq - mean) / std

    def embed(self, streams: dict[str, np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
        """Pooled V_pov (7E) plus per-stream empty flags (7)."""
        if not self.encoders:
            raise UntrainedModel("revpov encoders are not trained")
        parts = []
        flags = np.zeros(len(EMBED_ORDER))
        for si, name in enumerate(EMBED_ORDER):
            seq = streams[name]
            if seq.shape[0] == 0:
                parts.append(np.zeros(self.config.out_dim))
                flags[si] = 1.0
            else:
                _, pooled = self.encoders[name].forward(self.normalize(name, seq))
                parts.append(pooled)
        return np.concatenate(parts), flags

    def step_outputs(self, streams: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
        """Per-step encoder outputs (T, E per stream), for the consistency net."""
        if not self.encoders:
            raise UntrainedModel("revpov encoders are not trained")
        out = {}
        for name in EMBED_ORDER:
            seq = streams[name]
            if seq.shape[0] == 0:
                out[name] = np.zeros((0, self.config.out_dim))
            else:
                steps, _ = self.encoders[name].forward(self.normalize(name, seq))
                out[name] = steps
        return out

    def forest_input(self, streams: dict[str, np.ndarray]) -> np.ndarray:
        v_pov, flags = self.embed(streams)
        return np.concatenate([v_pov, flags])

    def decide(self, forest_input: np.ndarray) -> tuple[int, float]:
        """Majority over the forests; score = fraction voting cheater."""
        if not self.forests:
            raise UntrainedModel("revpov forests are not trained")
        votes = [forest.decide(forest_input)[0] for forest in self.forests]
        return majority_vote(votes), float(np.mean(votes))

    # -- persistence -------------------------------------------------------

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        cfg = self.config.__dict__.copy()
        for name in EMBED_ORDER:
            enc = self.encoders[name]
            arrays = enc.state_arrays()
            mean, std = self.norms[name]
            arrays["__norm_mean__"] = mean
            arrays["__norm_std__"] = std
            save_container(
                directory / f"encoder-{name}.bin",
                "sequence-encoder",
                {"stream": name, "input_dim": enc.config.input_dim, **cfg},
                arrays,
            )
        for k, forest in enumerate(self.forests):
            save_container(
                directory / f"forest-{k}.bin", "forest",
                {"n_estimators": forest.n_estimators, "max_depth": forest.max_depth, "seed": forest.seed},
                forest.state_arrays(),
            )
        manifest = {"version": self.version, "config": cfg, "streams": list(EMBED_ORDER)}
        (directory / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))

    @classmethod
    def load(cls, directory: str | Path) -> "RevPovModel":
        directory = Path(directory)
        manifest = json.loads((directory / "manifest.json").read_text())
        config = RevPovConfig(**manifest["config"])
        model = cls(config)
        model.version = manifest["version"]
        for name in EMBED_ORDER:
            kind, cfg, arrays = load_container(directory / f"encoder-{name}.bin")
            enc = SequenceEncoder(
                EncoderConfig(
                    input_dim=cfg["input_dim"],
                    hidden=config.hidden,
                    layers=config.layers,
                    dropout=config.dropout,
                    dense_dim=config.dense_dim,
                    out_dim=config.out_dim,
                    max_len=config.max_len,
                ),
                seed=config.seed,
            )
            mean = arrays.pop("__norm_mean__")
            std = arrays.pop("__norm_std__")
            enc.load_state(arrays)
            model.encoders[name] = enc
            model.norms[name] = (mean, std)
        model.forests = []
        k = 0
        while (directory / f"forest-{k}.bin").exists():
            kind, cfg, arrays = load_container(directory / f"forest-{k}.bin")
            forest = Forest(
                n_estimators=cfg["n_estimators"], max_depth=cfg["max_depth"], seed=cfg["seed"]
            )
            forest.load_state(arrays)
            model.forests.append(forest)
            k += 1
        return model


def _fit_norms(samples, name: str) -> tuple[np.ndarray, np.ndarray]:
    rows = [s.streams[name] for s in samples if s.streams[name].shape[0] > 0]
    width = len(STREAM_COLUMNS[name])
    if not rows:
        return np.zeros(width), np.ones(width)
    stacked = np.concatenate(rows, axis=0)
    mean = stacked.mean(axis=0)
    std = stacked.std(axis=0)
    std[std < 1e-9] = 1.0
    return mean, std


def train_revpov(train_samples, train_labels, config: RevPovConfig) -> RevPovModel:
    """Phase 1 trains the seven encoders (sigmoid heads, weighted BCE);
    phase 2 embeds every training player, multi-subsamples, and fits one
    forest per balanced set."""
    labels = np.asarray(train_labels, dtype=np.int64)
    if len(np.unique(labels)) < 2:
        raise DegenerateClass("revpov training requires both classes")
    model = RevPovModel(config)

    for si, name in enumerate(EMBED_ORDER):
        model.norms[name] = _fit_norms(train_samples, name)
        enc = SequenceEncoder(
            EncoderConfig(
                input_dim=len(STREAM_COLUMNS[name]),
                hidden=config.hidden,
                layers=config.layers,
                dropout=config.dropout,
                dense_dim=config.dense_dim,
                out_dim=config.out_dim,
                max_len=config.max_len,
            ),
            seed=config.seed * 101 + si,
        )
        data, ys = [], []
        for s, y in zip(train_samples, labels):
            seq = s.streams[name]
            if seq.shape[0] > 0:
                data.append(model.normalize(name, seq))
                ys.append(y)
        if data and len(np.unique(ys)) == 2:
            state = {"pooled": None}

            def fwd(seq, rng, enc=enc, state=state):
                _, pooled = enc.forward(seq, train_rng=rng)
                state["pooled"] = pooled
                return enc.head_score(pooled)

            def bwd(dscore, enc=enc, state=state):
                dpooled = enc.head_backward(dscore)
                enc.backward_from_pooled(dpooled)

            train_binary(
                enc, fwd, bwd, data, np.asarray(ys, dtype=np.float64),
                epochs=config.encoder_epochs, lr=config.encoder_lr,
                pos_weight=config.pos_weight, seed=config.seed * 101 + si,
            )
        model.encoders[name] = enc

    inputs = np.stack([model.forest_input(s.streams) for s in train_samples])
    subsets = multi_subsample(labels, seed=config.seed, k=config.n_forests)
    model.forests = [
        Forest(
            n_estimators=config.forest_trees,
            max_depth=config.forest_depth,
            seed=config.seed * 977 + k,
        ).fit(inputs[idx], labels[idx])
        for k, idx in enumerate(subsets)
    ]
    model.version = f"revpov-seed{config.seed}"
    return model
