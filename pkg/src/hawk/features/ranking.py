"""Mann-Whitney U feature ranking between cheater and honest samples."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DegenerateClass
from .structured import FEATURE_NAMES


def _average_ranks(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ranks (1-based, ties averaged) and the tie-group sizes."""
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(len(values), dtype=np.float64)
    ties = []
    i = 0
    sorted_vals = values[order]
    while i < len(values):
        j = i
        while j + 1 < len(values) and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        avg = (i + j) / 2.0 + 1.0
        ranks[order[i : j + 1]] = avg
        ties.append(j - i + 1)
        i = j + 1
    return ranks, np.asarray(ties, dtype=np.float64)


def mannwhitney_u(x_pos: np.ndarray, x_neg: np.ndarray) -> tuple[float, float]:
    """Two-sided p via the normal approximation with tie correction.

    Returns (U for the positive class, p). All-tied input gives p = 1.
    """
    n1, n2 = len(x_pos), len(x_neg)
    combined = np.concatenate([x_pos, x_neg])
    ranks, ties = _average_ranks(combined)
    r1 = float(ranks[:n1].sum())
    u1 = r1 - n1 * (n1 + 1) / 2.0
    n = n1 + n2
    mu = n1 * n2 / 2.0
    tie_term = float(((ties**3 - ties).sum()) / (n * (n - 1))) if n > 1 else 0.0
    sigma_sq = (n1 * n2 / 12.0) * ((n + 1) - tie_term)
    if sigma_sq <= 0:
        return u1, 1.0
    z = max(0.0, abs(u1 - mu) - 0.5) / math.sqrt(sigma_sq)
    p = math.erfc(z / math.sqrt(2.0))
    return u1, min(p, 1.0)


def rank_features_mannwhitney(
    vectors: np.ndarray,
    masks: np.ndarray,
    labels: np.ndarray,
    names: tuple[str, ...] = FEATURE_NAMES,
) -> list[tuple[str, float, float]]:
    """Order features by ascending p (most distinguishing first).

    Missing-mask samples are excluded per feature; a feature left with an
    empty class ranks last with p = 1.
    """
    labels = np.asarray(labels, dtype=bool)
    if not labels.any() or labels.all():
        raise DegenerateClass("both classes are required for ranking")
    results = []
    for j, name in enumerate(names):
        valid = ~np.asarray(masks[:, j], dtype=bool)
        pos = vectors[valid & labels, j]
        neg = vectors[valid & ~labels, j]
        if len(pos) == 0 or len(neg) == 0:
            results.append((name, float("nan"), 1.0, j))
            continue
        u, p = mannwhitney_u(pos, neg)
        results.append((name, u, p, j))
    results.sort(key=lambda r: (r[2], r[3]))
    return [(name, u, p) for name, u, p, _ in results]
