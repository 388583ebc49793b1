"""CART-style decision tree (gini impurity, midpoint thresholds)."""

from __future__ import annotations

import numpy as np

from ..errors import UntrainedModel


class DecisionTree:
    """Binary-class tree; per-node feature subsets drawn from ``rng``."""

    def __init__(
        self,
        max_depth: int = 12,
        min_samples_leaf: int = 1,
        feature_fraction: float | str = 1.0,
        n_classes: int = 2,
    ):
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.feature_fraction = feature_fraction
        self.n_classes = n_classes
        self._nodes = None

    def _n_features_split(self, d: int) -> int:
        if self.feature_fraction == "sqrt":
            return max(1, int(round(np.sqrt(d))))
        return max(1, min(d, int(round(self.feature_fraction * d))))

    def fit(self, X: np.ndarray, y: np.ndarray, rng: np.random.Generator) -> "DecisionTree":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        # node storage: feature (-1 = leaf), threshold, left, right, probs
        feats, thresholds, lefts, rights, probs = [], [], [], [], []

        def counts(idx):
            return np.bincount(y[idx], minlength=self.n_classes).astype(np.float64)

        def add_leaf(idx):
            c = counts(idx)
            feats.append(-1)
            thresholds.append(0.0)
            lefts.append(-1)
            rights.append(-1)
            probs.append(c / c.sum())
            return len(feats) - 1

        def best_split(idx, feat_subset):
            n = len(idx)
            best = (np.inf, -1, 0.0)
            for f in feat_subset:
                vals = X[idx, f]
                order = np.argsort(vals, kind="mergesort")
                sv = vals[order]
                sy = y[idx][order]
                onehot = np.zeros((n, self.n_classes))
                onehot[np.arange(n), sy] = 1.0
                left_counts = np.cumsum(onehot, axis=0)
                total = left_counts[-1]
                boundary = np.nonzero(sv[:-1] < sv[1:])[0]
                if boundary.size == 0:
                    continue
                nl = (boundary + 1).astype(np.float64)
                nr = n - nl
                lc = left_counts[boundary]
                rc = total - lc
                gini_l = 1.0 - ((lc / nl[:, None]) ** 2).sum(axis=1)
                gini_r = 1.0 - ((rc / nr[:, None]) ** 2).sum(axis=1)
                cost = (nl * gini_l + nr * gini_r) / n
                k = int(np.argmin(cost))
                if cost[k] < best[0]:
                    thr = (sv[boundary[k]] + sv[boundary[k] + 1]) / 2.0
                    best = (float(cost[k]), int(f), thr)
            return best

        def build(idx, depth) -> int:
            c = counts(idx)
            if (
                depth >= self.max_depth
                or len(idx) < 2 * self.min_samples_leaf
                or (c > 0).sum() < 2
            ):
                return add_leaf(idx)
            d = X.shape[1]
            m = self._n_features_split(d)
            feat_subset = rng.permutation(d)[:m]
            cost, f, thr = best_split(idx, feat_subset)
            if f < 0:
                return add_leaf(idx)
            mask = X[idx, f] < thr
            left_idx, right_idx = idx[mask], idx[~mask]
            if len(left_idx) < self.min_samples_leaf or len(right_idx) < self.min_samples_leaf:
                return add_leaf(idx)
            node = add_leaf(idx)  # placeholder; overwritten below
            feats[node] = int(f)
            thresholds[node] = float(thr)
            lefts[node] = build(left_idx, depth + 1)
            rights[node] = build(right_idx, depth + 1)
            return node

        build(np.arange(len(y)), 0)
        self._nodes = (
            np.asarray(feats, dtype=np.int64),
            np.asarray(thresholds, dtype=np.float64),
            np.asarray(lefts, dtype=np.int64),
            np.asarray(rights, dtype=np.int64),
            np.asarray(probs, dtype=np.float64),
        )
        return self

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        if self._nodes is None:
            raise UntrainedModel("decision tree is not fitted")
        feats, thresholds, lefts, rights, probs = self._nodes
        node = 0
        while feats[node] >= 0:
            node = lefts[node] if x[feats[node]] < thresholds[node] else rights[node]
        return probs[node]

    def state_arrays(self) -> dict[str, np.ndarray]:
        if self._nodes is None:
            raise UntrainedModel("decision tree is not fitted")
        feats, thresholds, lefts, rights, probs = self._nodes
        return {
            "feats": feats,
            "thresholds": thresholds,
            "lefts": lefts,
            "rights": rights,
            "probs": probs,
        }

    def load_state(self, arrays: dict[str, np.ndarray]) -> None:
        self._nodes = (
            arrays["feats"],
            arrays["thresholds"],
            arrays["lefts"],
            arrays["rights"],
            arrays["probs"],
        )
