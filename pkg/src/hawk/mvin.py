"""Multi-view integration: weighted fusion of the three subsystem verdicts
and the task-specified threshold optimizer.

The fused value W = l1*D_pov + l2*D_stats + l3*D_spc is thresholded at
epsilon (W >= epsilon flags the player). The optimizer walks the weight
simplex on a fixed grid and, per weight triple, the attainable thresholds:
the smallest attainable W plus the midpoints between consecutive distinct
values. Ties break by higher recall, then fewer false positives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateClass, InfeasibleConstraint, SimplexViolation
from .metrics import auc_roc, confusion_from_predictions, metrics

OBJECTIVE_KINDS = ("f1", "accuracy", "auc", "accuracy-subject-to-recall")


@dataclass(frozen=True)
class ObjectiveSpec:
    kind: str = "accuracy-subject-to-recall"
    r: float | None = 0.7

    def __post_init__(self):
        if self.kind not in OBJECTIVE_KINDS:
            raise ValueError(f"unknown objective {self.kind!r}")
        if self.kind == "accuracy-subject-to-recall":
            if self.r is None:
                raise ValueError("constrained objective requires r")
        elif self.r is not None:
            object.__setattr__(self, "r", None)

    def label(self) -> str:
        if self.kind == "accuracy-subject-to-recall":
            return f"Acc_rc>{self.r}"
        return self.kind


@dataclass
class MvinModel:
    lam: np.ndarray  # weights for (pov, stats, spc)
    epsilon: float
    objective: ObjectiveSpec
    validation_metrics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lam = np.asarray(self.lam, dtype=np.float64)
        _check_simplex(self.lam)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam.tolist(),
            "epsilon": self.epsilon,
            "objective": {"kind": self.objective.kind, "r": self.objective.r},
            "validationMetrics": self.validation_metrics,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "MvinModel":
        return cls(
            lam=np.asarray(obj["lambda"]),
            epsilon=float(obj["epsilon"]),
            objective=ObjectiveSpec(kind=obj["objective"]["kind"], r=obj["objective"]["r"]),
            validation_metrics=obj.get("validationMetrics", {}),
        )


def _check_simplex(lam: np.ndarray) -> None:
    if lam.shape != (3,) or (lam < -1e-9).any() or abs(float(lam.sum()) - 1.0) > 1e-9:
        raise SimplexViolation(f"weights {lam} are not on the 3-simplex")


def fuse(lam, d_pov: int, d_stats: int, d_spc: int) -> float:
    lam = np.asarray(lam, dtype=np.float64)
    _check_simplex(lam)
    return float(lam[0] * d_pov + lam[1] * d_stats + lam[2] * d_spc)


def decide_hawk(w: float, epsilon: float) -> int:
    return 1 if w >= epsilon else 0


def weight_grid(step: float = 0.05) -> list[np.ndarray]:
    """All simplex triples on the grid, built with integer arithmetic."""
    denom = int(round(1.0 / step))
    grid = []
    for i in range(denom + 1):
        for j in range(denom + 1 - i):
            k = denom - i - j
            grid.append(np.asarray([i / denom, j / denom, k / denom]))
    return grid


def threshold_candidates(w_values: np.ndarray) -> list[float]:
    """The smallest attainable W, then midpoints of consecutive distinct W."""
    distinct = np.unique(w_values)
    cands = [float(distinct[0])]
    cands += [float((a + b) / 2.0) for a, b in zip(distinct, distinct[1:])]
    return cands


def optimize(
    triples: np.ndarray,
    labels: np.ndarray,
    objective: ObjectiveSpec,
    step: float = 0.05,
) -> MvinModel:
    """Exhaustive scan of the weight grid x attainable thresholds.

    Constrained objectives maximize accuracy among candidates with
    recall >= r and raise InfeasibleConstraint when no candidate qualifies.
    """
    triples = np.asarray(triples, dtype=np.float64)
    labels = np.asarray(labels, dtype=bool)
    if len(triples) == 0 or not labels.any() or labels.all():
        raise DegenerateClass("optimizer needs a non-empty validation set with both classes")

    best = None  # (value, recall, -fp, lam, eps, metrics)
    for lam in weight_grid(step):
        w = triples @ lam
        auc_value = auc_roc(w, labels) if objective.kind == "auc" else None
        for eps in threshold_candidates(w):
            pred = w >= eps
            c = confusion_from_predictions(labels, pred)
            m = metrics(c)
            recall = m["recall"] if m["recall"] is not None else 0.0
            if objective.kind == "f1":
                denom = 2 * c.tp + c.fp + c.fn
                value = (2 * c.tp / denom) if denom > 0 else 0.0
            elif objective.kind == "accuracy":
                value = m["accuracy"]
            elif objective.kind == "auc":
                value = auc_value
            else:
                if recall < objective.r:
                    continue
                value = m["accuracy"]
            key = (value, recall, -c.fp)
            if best is None or key > best[0]:
                best = (key, lam, eps, m, c)

    if best is None:
        raise InfeasibleConstraint(
            f"no threshold reaches recall >= {objective.r}"
        )
    key, lam, eps, m, c = best
    model = MvinModel(lam=lam, epsilon=eps, objective=objective)
    model.validation_metrics = {
        "objectiveValue": key[0],
        "recall": m["recall"],
        "accuracy": m["accuracy"],
        "npv": m["npv"],
        "oei": m["oei"],
        "tp": c.tp,
        "tn": c.tn,
        "fp": c.fp,
        "fn": c.fn,
    }
    return model
