"""Random forest: bootstrap trees, probability averaging, argmax decision."""

from __future__ import annotations

import numpy as np

from ..errors import UntrainedModel
from .tree import DecisionTree


class Forest:
    def __init__(
        self,
        n_estimators: int = 100,
        max_depth: int = 12,
        feature_fraction: float | str = "sqrt",
        bootstrap: bool = True,
        seed: int = 0,
        n_classes: int = 2,
    ):
        self.n_estimators = n_estimators
        self.max_depth = max_depth
        self.feature_fraction = feature_fraction
        self.bootstrap = bootstrap
        self.seed = seed
        self.n_classes = n_classes
        self.trees: list[DecisionTree] | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "Forest":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        root = np.random.SeedSequence(self.seed)
        self.trees = []
        for child in root.spawn(self.n_estimators):
            rng = np.random.Generator(np.random.PCG64(child))
            if self.bootstrap:
                idx = rng.integers(0, len(y), size=len(y))
            else:
                idx = np.arange(len(y))
            tree = DecisionTree(
                max_depth=self.max_depth,
                feature_fraction=self.feature_fraction,
                n_classes=self.n_classes,
            )
            tree.fit(X[idx], y[idx], rng)
            self.trees.append(tree)
        return self

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        """Mean of the per-tree class distributions."""
        if not self.trees:
            raise UntrainedModel("forest is not fitted")
        x = np.asarray(x, dtype=np.float64)
        acc = np.zeros(self.n_classes)
        for tree in self.trees:
            acc += tree.predict_proba(x)
        return acc / len(self.trees)

    def decide(self, x: np.ndarray) -> tuple[int, np.ndarray]:
        """Class with the highest averaged probability; ties go to class 0."""
        probs = self.predict_proba(x)
        return int(np.argmax(probs)), probs

    def state_arrays(self) -> dict[str, np.ndarray]:
        if self.trees is None:
            raise UntrainedModel("forest is not fitted")
        out = {}
        for i, tree in enumerate(self.trees):
            for name, arr in tree.state_arrays().items():
                out[f"tree{i}.{name}"] = arr
        return out

    def load_state(self, arrays: dict[str, np.ndarray]) -> None:
        self.trees = []
        i = 0
        names = ("feats", "thresholds", "lefts", "rights", "probs")
        while f"tree{i}.feats" in arrays:
            tree = DecisionTree(
                max_depth=self.max_depth,
                feature_fraction=self.feature_fraction,
                n_classes=self.n_classes,
            )
            tree.load_state({name: arrays[f"tree{i}.{name}"] for name in names})
            self.trees.append(tree)
            i += 1
