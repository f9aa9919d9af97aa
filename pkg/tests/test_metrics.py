import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rustcast.errors import EmptyEvaluation, LengthMismatch
from rustcast.metrics import ConfusionMatrix, confusion, metrics, scores


def test_confusion_counts():
    cm = confusion([1, 0, 1, 0], [1, 0, 0, 1])
    assert (cm.tp, cm.tn, cm.fp, cm.fn) == (1, 1, 1, 1)


def test_confusion_identity():
    cm = confusion([1, 1, 0], [1, 1, 0])
    assert cm.fp == cm.fn == 0


def test_confusion_empty_and_length():
    assert confusion([], []) == ConfusionMatrix(0, 0, 0, 0)
    with pytest.raises(EmptyEvaluation):
        scores(confusion([], []))
    with pytest.raises(LengthMismatch):
        confusion([1], [1, 0])


def test_hand_example():
    cm = ConfusionMatrix(tp=2, fp=1, fn=1, tn=6)
    m = metrics(cm, "binary")
    assert m["accuracy"] == pytest.approx(0.8)
    assert m["precision"] == pytest.approx(2 / 3)
    assert m["recall"] == pytest.approx(2 / 3)
    assert m["f1"] == pytest.approx(2 / 3)
    macro = metrics(cm, "macro")
    assert macro["precision"] == pytest.approx((2 / 3 + 6 / 7) / 2)
    assert macro["precision"] == pytest.approx(0.7619, abs=1e-4)


def test_perfect_predictions():
    cm = confusion([1, 0, 1, 0, 0], [1, 0, 1, 0, 0])
    for mode in ("binary", "macro", "weighted"):
        assert all(v == 1.0 for v in metrics(cm, mode).values())


def test_all_negative_predictions_on_imbalanced_data():
    cm = confusion([0] * 100, [1] * 16 + [0] * 84)
    s = scores(cm)
    assert s.accuracy == pytest.approx(0.84)
    assert s.average("weighted")[1] == pytest.approx(0.84)
    assert s.per_class[1].recall == 0.0
    assert s.per_class[1].precision == 0.0
    assert s.per_class[1].precision_undefined


def test_unknown_averaging():
    with pytest.raises(ValueError):
        metrics(ConfusionMatrix(1, 0, 0, 1), "micro")


def _brute_force(preds, labels):
    """Recount every metric directly from the (pred, label) pairs."""
    out = {}
    n = len(preds)
    correct = 0
    for p, y in zip(preds, labels):
        if p == y:
            correct += 1
    out["accuracy"] = correct / n
    per = {}
    for cls in (0, 1):
        pred_c = sum(1 for p in preds if p == cls)
        true_c = sum(1 for y in labels if y == cls)
        hit = sum(1 for p, y in zip(preds, labels) if p == cls and y == cls)
        prec = hit / pred_c if pred_c else 0.0
        rec = hit / true_c if true_c else 0.0
        f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        per[cls] = (prec, rec, f1, true_c)
    out["binary"] = per[1][:3]
    out["macro"] = tuple((per[0][i] + per[1][i]) / 2 for i in range(3))
    out["weighted"] = tuple((per[0][i] * per[0][3] + per[1][i] * per[1][3]) / n for i in range(3))
    return out


def test_brute_force_oracle_200_vectors():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        n = int(rng.integers(1, 501))
        preds = rng.integers(0, 2, n).tolist()
        labels = rng.integers(0, 2, n).tolist()
        s = scores(confusion(preds, labels))
        ref = _brute_force(preds, labels)
        assert abs(s.accuracy - ref["accuracy"]) <= 1e-12
        for mode in ("binary", "macro", "weighted"):
            for a, b in zip(s.average(mode), ref[mode]):
                assert abs(a - b) <= 1e-12
        assert abs(s.average("weighted")[1] - s.accuracy) <= 1e-12


counts = st.integers(0, 10_000)


@given(counts, counts, counts, counts)
def test_weighted_recall_is_accuracy_and_bounds(tp, fp, fn, tn):
    cm = ConfusionMatrix(tp, fp, fn, tn)
    if cm.total == 0:
        return
    s = scores(cm)
    assert abs(s.average("weighted")[1] - s.accuracy) <= 1e-12
    for mode in ("binary", "macro", "weighted"):
        assert all(0.0 <= v <= 1.0 for v in s.average(mode))
    for c in s.per_class.values():
        assert c.f1 <= max(c.precision, c.recall) + 1e-15
    assert sum(c.support for c in s.per_class.values()) == cm.total
