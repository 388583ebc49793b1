"""Statistics review subsystem: seven-classifier committee over the 28-value
vectors with nested multi-subsampling majority votes.

Each kind holds K fitted instances (one per balanced subsample); a sample is
voted on within each kind first, then across the seven kinds. Non-tree kinds
consume z-scored features, tree kinds the raw values; the 28 missing-mask
bits are appended as extra binary inputs for everyone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, DegenerateClass, UntrainedModel
from .learn.checkpoint import load_container, save_container
from .learn.classic import CLASSIC_KINDS, ClassicClassifier
from .revpov import majority_vote, multi_subsample

_TREE_KINDS = ("random-forest", "decision-tree")


@dataclass
class RevStatsConfig:
    kinds: tuple[str, ...] = CLASSIC_KINDS
    n_subsamples: int = 9
    seed: int = 0

    def __post_init__(self):
        if len(self.kinds) % 2 == 0:
            raise ConfigError("committee size must be odd to avoid vote ties")
        unknown = set(self.kinds) - set(CLASSIC_KINDS)
        if unknown:
            raise ConfigError(f"unknown classifier kinds: {sorted(unknown)}")


@dataclass
class Normalization:
    mean: np.ndarray
    std: np.ndarray

    def apply(self, x: np.ndarray) -> np.ndarray:
        return (x - self.mean) / self.std

    @classmethod
    def fit(cls, X: np.ndarray) -> "Normalization":
        mean = X.mean(axis=0)
        std = X.std(axis=0)
        constant = std < 1e-9
        # constant columns: unit std and the exact constant as mean, so the
        # training data maps to exactly 0 (np.mean carries float noise)
        std = np.where(constant, 1.0, std)
        if constant.any() and len(X):
            mean = np.where(constant, X[0], mean)
        return cls(mean=mean, std=std)


class Committee:
    def __init__(self, config: RevStatsConfig):
        self.config = config
        self.norm: Normalization | None = None
        self.instances: dict[str, list[ClassicClassifier]] = {}
        self.version = "untrained"

    def _prepare(self, v28: np.ndarray, mask: np.ndarray, kind: str) -> np.ndarray:
        base = self.norm.apply(v28) if kind not in _TREE_KINDS else v28
        return np.concatenate([base, np.asarray(mask, dtype=np.float64)])

    def kind_vote(self, kind: str, v28: np.ndarray, mask: np.ndarray) -> int:
        x = self._prepare(v28, mask, kind)
        votes = [inst.decide(x)[0] for inst in self.instances[kind]]
        return majority_vote(votes)

    def decide(self, v28: np.ndarray, mask: np.ndarray) -> tuple[int, float]:
        """Nested majority: per kind over its K instances, then across kinds."""
        if not self.instances:
            raise UntrainedModel("committee is not trained")
        kind_votes = [self.kind_vote(kind, v28, mask) for kind in self.config.kinds]
        return majority_vote(kind_votes), float(np.mean(kind_votes))

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / "norm.json").write_text(
            json.dumps({"mean": self.norm.mean.tolist(), "std": self.norm.std.tolist()})
        )
        import pickle

        for kind, instances in self.instances.items():
            blob = pickle.dumps(instances)
            save_container(
                directory / f"kind-{kind}.bin", "classic-committee",
                {"kind": kind, "count": len(instances)},
                {"pickled": np.frombuffer(blob, dtype=np.uint8)},
            )
        manifest = {
            "version": self.version,
            "kinds": list(self.config.kinds),
            "n_subsamples": self.config.n_subsamples,
            "seed": self.config.seed,
        }
        (directory / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))

    @classmethod
    def load(cls, directory: str | Path) -> "Committee":
        import pickle

        directory = Path(directory)
        manifest = json.loads((directory / "manifest.json").read_text())
        config = RevStatsConfig(
            kinds=tuple(manifest["kinds"]),
            n_subsamples=manifest["n_subsamples"],
            seed=manifest["seed"],
        )
        committee = cls(config)
        committee.version = manifest["version"]
        norm = json.loads((directory / "norm.json").read_text())
        committee.norm = Normalization(np.asarray(norm["mean"]), np.asarray(norm["std"]))
        for kind in config.kinds:
            _, _, arrays = load_container(directory / f"kind-{kind}.bin")
            committee.instances[kind] = pickle.loads(bytes(arrays["pickled"]))
        return committee


def train_revstats(
    vectors: np.ndarray, masks: np.ndarray, labels: np.ndarray, config: RevStatsConfig
) -> Committee:
    """Fit len(kinds) x K instances on the balanced subsample sets."""
    labels = np.asarray(labels, dtype=np.int64)
    if len(np.unique(labels)) < 2:
        raise DegenerateClass("revstats training requires both classes")
    committee = Committee(config)
    committee.norm = Normalization.fit(vectors)
    subsets = multi_subsample(labels, seed=config.seed, k=config.n_subsamples)
    masks = np.asarray(masks, dtype=np.float64)
    z = committee.norm.apply(vectors)
    for ki, kind in enumerate(config.kinds):
        base = z if kind not in _TREE_KINDS else vectors
        X = np.hstack([base, masks])
        committee.instances[kind] = [
            ClassicClassifier(kind, seed=config.seed * 31 + ki * 131 + si).fit(X[idx], labels[idx])
            for si, idx in enumerate(subsets)
        ]
    committee.version = f"revstats-seed{config.seed}"
    return committee
