"""Mini-batch Adam training with validation-loss early stopping, and evaluation."""

import time
from dataclasses import dataclass, field

import numpy as np

from rustcast.data.series import stack
from rustcast.errors import EmptyTrainingSet, ShapeMismatch, ValidationError
from rustcast.metrics import AVERAGINGS, confusion, scores
from rustcast.nn.activations import sigmoid
from rustcast.nn.adam import AdamState, adam_step
from rustcast.nn.loss import bce_loss

EVAL_CHUNK = 1024


@dataclass
class TrainConfig:
    batch_size: int = 32
    lr: float = 0.001
    patience: int = 5
    max_epochs: int = 100
    seed: int = 0
    val_fraction: float = 0.2
    threshold: float = 0.5
    positive_class_weight: float = 1.0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValidationError("batch_size must be >= 1")
        if self.patience < 1:
            raise ValidationError("patience must be >= 1")
        if self.max_epochs < 1:
            raise ValidationError("max_epochs must be >= 1")
        if not 0.0 < self.threshold < 1.0:
            raise ValidationError("threshold must be in (0, 1)")
        if self.lr <= 0 or self.positive_class_weight <= 0:
            raise ValidationError("lr and positive_class_weight must be positive")


@dataclass
class EpochLog:
    epoch: int
    train_loss: float
    val_loss: float
    wall_time: float

    def line(self) -> str:
        return f"{self.epoch}\t{self.train_loss!r}\t{self.val_loss!r}"


def _snapshot(model) -> dict:
    return {k: a.copy() for k, a in model.named_arrays().items()}


def _restore(model, snapshot: dict) -> None:
    for k, a in model.named_arrays().items():
        a[...] = snapshot[k]


class EarlyStopping:
    """Stop once the monitored loss fails to improve for ``patience`` epochs.

    An epoch improves only if its loss is below the best so far by more than
    ``min_delta``.
    """

    def __init__(self, patience: int = 5, min_delta: float = 1e-12):
        self.patience = patience
        self.min_delta = min_delta
        self.best_loss = np.inf
        self.best_epoch = 0
        self.best_params = None
        self.wait = 0

    def update(self, epoch: int, loss: float, model=None) -> bool:
        if loss < self.best_loss - self.min_delta:
            self.best_loss = loss
            self.best_epoch = epoch
            self.wait = 0
            if model is not None:
                self.best_params = _snapshot(model)
        else:
            self.wait += 1
        return self.wait >= self.patience


@dataclass
class TrainResult:
    model: object
    logs: list[EpochLog] = field(default_factory=list)
    best_epoch: int = 0
    best_val_loss: float = float("nan")

    @property
    def stopped_epoch(self) -> int:
        return self.logs[-1].epoch if self.logs else 0


def batches(n: int, batch_size: int, rng: np.random.Generator):
    """Index arrays for one shuffled epoch; the last batch may be short."""
    order = rng.permutation(n)
    return [order[i : i + batch_size] for i in range(0, n, batch_size)]


def logits_of(model, x) -> np.ndarray:
    out = [model.forward(x[i : i + EVAL_CHUNK])[0] for i in range(0, len(x), EVAL_CHUNK)]
    return np.concatenate(out) if out else np.empty(0)


def evaluate_loss(model, x, y, pos_weight: float = 1.0) -> float:
    return bce_loss(logits_of(model, x), y, pos_weight)[0]


def _inputs(model, examples):
    x, y = stack(examples)
    x = model.prepare_inputs(x)
    width = x.shape[-1]
    if width != model.input_width:
        raise ShapeMismatch(f"model expects {model.input_width} inputs per step, data has {width}")
    return x, y


def train(model, split, config: TrainConfig, on_epoch=None) -> TrainResult:
    """Train ``model`` in place and restore its best-validation-loss parameters.

    ``on_epoch(log, model)`` is called after every epoch. With an empty
    validation split the training loss is monitored instead.
    """
    if not split.train:
        raise EmptyTrainingSet("training split is empty")
    x_tr, y_tr = _inputs(model, split.train)
    x_va, y_va = _inputs(model, split.val) if split.val else (None, None)

    rng = np.random.default_rng(config.seed)
    state = AdamState.fresh(model, lr=config.lr, beta1=config.beta1,
                            beta2=config.beta2, eps=config.eps)
    stopper = EarlyStopping(config.patience)
    result = TrainResult(model)
    t0 = time.perf_counter()
    for epoch in range(1, config.max_epochs + 1):
        total = 0.0
        for idx in batches(len(y_tr), config.batch_size, rng):
            logits, cache = model.forward(x_tr[idx])
            loss, dlogits = bce_loss(logits, y_tr[idx], config.positive_class_weight)
            adam_step(model, model.backward(cache, dlogits), state)
            total += loss * len(idx)
        train_loss = total / len(y_tr)
        if x_va is not None:
            val_loss = evaluate_loss(model, x_va, y_va, config.positive_class_weight)
        else:
            val_loss = evaluate_loss(model, x_tr, y_tr, config.positive_class_weight)
        log = EpochLog(epoch, train_loss, val_loss, time.perf_counter() - t0)
        result.logs.append(log)
        if on_epoch is not None:
            on_epoch(log, model)
        if stopper.update(epoch, val_loss, model):
            break
    if stopper.best_params is not None:
        _restore(model, stopper.best_params)
    result.best_epoch = stopper.best_epoch
    result.best_val_loss = float(stopper.best_loss)
    return result


def predict_proba(model, x) -> np.ndarray:
    return sigmoid(logits_of(model, model.prepare_inputs(x)))


def predict(model, x, threshold: float = 0.5) -> np.ndarray:
    """Class 1 where sigmoid(logit) >= threshold."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != model.input_width and model.prepare_inputs(x).shape[-1] != model.input_width:
        raise ShapeMismatch(f"model expects {model.input_width} inputs per step")
    return (np.atleast_1d(predict_proba(model, x)) >= threshold).astype(np.int8)


@dataclass
class EvalReport:
    scores: object
    k: int
    model: str
    config: dict = field(default_factory=dict)

    def row(self, averaging: str = "weighted") -> dict:
        p, r, f = self.scores.average(averaging)
        return {"k": self.k, "accuracy": self.scores.accuracy,
                "precision": p, "recall": r, "f1": f}

    def to_text(self) -> str:
        s = self.scores
        cm = s.confusion
        lines = [
            f"model={self.model}",
            f"lead={self.k}",
            f"n={cm.total}",
            f"tp={cm.tp}", f"fp={cm.fp}", f"fn={cm.fn}", f"tn={cm.tn}",
            f"accuracy={s.accuracy!r}",
        ]
        for cls in (1, 0):
            c = s.per_class[cls]
            lines += [
                f"class{cls}.precision={c.precision!r}",
                f"class{cls}.recall={c.recall!r}",
                f"class{cls}.f1={c.f1!r}",
                f"class{cls}.support={c.support}",
                f"class{cls}.precision_undefined={str(c.precision_undefined).lower()}",
            ]
        for mode in AVERAGINGS:
            p, r, f = s.average(mode)
            lines += [f"{mode}.precision={p!r}", f"{mode}.recall={r!r}", f"{mode}.f1={f!r}"]
        lines += [f"config.{k}={v}" for k, v in sorted(self.config.items())]
        return "\n".join(lines) + "\n"


def evaluate(model, examples, threshold: float = 0.5, k: int = 0, config=None) -> EvalReport:
    x, y = stack(examples)
    preds = predict(model, x, threshold)
    return EvalReport(scores(confusion(preds, y)), k, model.arch, dict(config or {}))
