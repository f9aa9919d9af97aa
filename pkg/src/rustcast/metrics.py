"""Confusion counts and accuracy/precision/recall/F1 under three averagings."""

from dataclasses import dataclass, field

import numpy as np

from rustcast.errors import EmptyEvaluation, LengthMismatch

AVERAGINGS = ("binary", "macro", "weighted")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion(preds, labels) -> ConfusionMatrix:
    p = np.asarray(preds).astype(bool).reshape(-1)
    y = np.asarray(labels).astype(bool).reshape(-1)
    if p.shape != y.shape:
        raise LengthMismatch(f"{p.size} predictions vs {y.size} labels")
    return ConfusionMatrix(
        tp=int(np.sum(p & y)),
        fp=int(np.sum(p & ~y)),
        fn=int(np.sum(~p & y)),
        tn=int(np.sum(~p & ~y)),
    )


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int
    precision_undefined: bool = False  # class never predicted
    recall_undefined: bool = False  # class absent from labels


def _class_metrics(tp, fp, fn) -> ClassMetrics:
    p_den = tp + fp
    r_den = tp + fn
    precision = tp / p_den if p_den else 0.0
    recall = tp / r_den if r_den else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return ClassMetrics(precision, recall, f1, r_den, p_den == 0, r_den == 0)


@dataclass
class Scores:
    """Accuracy, per-class metrics and the three averages for one confusion matrix."""

    confusion: ConfusionMatrix
    accuracy: float
    per_class: dict = field(default_factory=dict)  # {1: ClassMetrics, 0: ClassMetrics}
    averages: dict = field(default_factory=dict)  # {mode: (precision, recall, f1)}

    def average(self, mode: str) -> tuple[float, float, float]:
        return self.averages[mode]


def scores(cm: ConfusionMatrix) -> Scores:
    if cm.total == 0:
        raise EmptyEvaluation("no evaluated examples")
    pos = _class_metrics(cm.tp, cm.fp, cm.fn)
    neg = _class_metrics(cm.tn, cm.fn, cm.fp)
    n = cm.total
    avgs = {
        "binary": (pos.precision, pos.recall, pos.f1),
        "macro": tuple(
            (getattr(pos, a) + getattr(neg, a)) / 2 for a in ("precision", "recall", "f1")
        ),
        "weighted": tuple(
            (getattr(pos, a) * pos.support + getattr(neg, a) * neg.support) / n
            for a in ("precision", "recall", "f1")
        ),
    }
    return Scores(cm, (cm.tp + cm.tn) / n, {1: pos, 0: neg}, avgs)


def metrics(cm: ConfusionMatrix, averaging: str = "weighted") -> dict:
    """Accuracy plus precision/recall/F1 under one averaging mode."""
    if averaging not in AVERAGINGS:
        raise ValueError(f"averaging must be one of {AVERAGINGS}")
    s = scores(cm)
    p, r, f = s.average(averaging)
    return {"accuracy": s.accuracy, "precision": p, "recall": r, "f1": f}
