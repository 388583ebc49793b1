"""Confusion-count metrics (recall, accuracy, NPV, OEI) and rank-based AUC."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateClass


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.tn, self.fp, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def n(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


def confusion_from_predictions(y_true, y_pred) -> ConfusionCounts:
    y_true = np.asarray(y_true, dtype=bool)
    y_pred = np.asarray(y_pred, dtype=bool)
    return ConfusionCounts(
        tp=int((y_true & y_pred).sum()),
        tn=int((~y_true & ~y_pred).sum()),
        fp=int((~y_true & y_pred).sum()),
        fn=int((y_true & ~y_pred).sum()),
    )


def metrics(c: ConfusionCounts, n_total: int | None = None) -> dict:
    """Recall, accuracy, NPV and OEI = (N / (TP+FP)) * recall * NPV.

    Zero-denominator metrics come back as None with their name listed under
    ``undefined`` (the reporting layer prints them as N/A).
    """
    n = c.n if n_total is None else n_total
    undefined = []

    recall = accuracy = npv = oei = None
    if c.tp + c.fn > 0:
        recall = c.tp / (c.tp + c.fn)
    else:
        undefined.append("recall")
    if c.n > 0:
        accuracy = (c.tp + c.tn) / c.n
    else:
        undefined.append("accuracy")
    if c.tn + c.fn > 0:
        npv = c.tn / (c.tn + c.fn)
    else:
        undefined.append("npv")
    if c.tp + c.fp > 0 and recall is not None and npv is not None:
        oei = (n / (c.tp + c.fp)) * recall * npv
    else:
        undefined.append("oei")

    return {
        "recall": recall,
        "accuracy": accuracy,
        "npv": npv,
        "oei": oei,
        "undefined": undefined,
    }


def auc_roc(scores, labels) -> float:
    """Mann-Whitney AUC with ties counted one half."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=bool)
    n_pos = int(labels.sum())
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateClass("AUC requires both classes")
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(len(scores), dtype=np.float64)
    sorted_scores = scores[order]
    i = 0
    while i < len(scores):
        j = i
        while j + 1 < len(scores) and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    r_pos = float(ranks[labels].sum())
    return (r_pos - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)
