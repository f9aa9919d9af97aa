"""Central finite-difference verification of analytic gradients."""

from dataclasses import dataclass, field

import numpy as np

from rustcast.nn.loss import bce_loss

# Entries smaller than this are compared on absolute error scaled by it;
# central differences carry ~1e-11 of roundoff on O(1) losses.
REL_FLOOR = 1e-5


@dataclass
class GradCheckReport:
    tol: float
    max_rel_error: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[str]:
        return [k for k, e in self.max_rel_error.items() if not e < self.tol]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def worst(self) -> float:
        return max(self.max_rel_error.values(), default=0.0)

    def lines(self) -> list[str]:
        return [
            f"{name:<14s} {err:.3e}  {'ok' if err < self.tol else 'FAIL'}"
            for name, err in self.max_rel_error.items()
        ]


class SignFlipped:
    """Wraps a model so that one gradient block comes back negated."""

    def __init__(self, model, block: str):
        self.model = model
        self.block = block

    def named_arrays(self):
        return self.model.named_arrays()

    def forward(self, x):
        return self.model.forward(x)

    def backward(self, cache, dlogits):
        grads = self.model.backward(cache, dlogits)
        grads[self.block] = -grads[self.block]
        return grads


def relative_error(a, n):
    a = np.asarray(a)
    n = np.asarray(n)
    return np.abs(a - n) / np.maximum(np.maximum(np.abs(a), np.abs(n)), REL_FLOOR)


def grad_check(model, x, y, h: float = 1e-5, tol: float = 1e-5) -> GradCheckReport:
    """Compare ``model.backward`` against central differences of the BCE loss.

    Every scalar parameter is perturbed, so keep models small.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    logits, cache = model.forward(x)
    _, dlogits = bce_loss(logits, y)
    analytic = model.backward(cache, dlogits)

    def loss():
        return bce_loss(model.forward(x)[0], y)[0]

    report = GradCheckReport(tol)
    for name, theta in model.named_arrays().items():
        numeric = np.empty_like(theta)
        flat = theta.reshape(-1)
        nflat = numeric.reshape(-1)
        for j in range(flat.size):
            orig = flat[j]
            flat[j] = orig + h
            up = loss()
            flat[j] = orig - h
            down = loss()
            flat[j] = orig
            nflat[j] = (up - down) / (2.0 * h)
        report.max_rel_error[name] = float(relative_error(analytic[name], numeric).max())
    return report


def _randomize(model, rng, scale=0.5):
    # Nonzero biases keep ReLU pre-activations off the kink at 0.
    for theta in model.named_arrays().values():
        theta[...] = rng.normal(scale=scale, size=theta.shape)
    return model


def fcnn_instance(seed: int = 0, input_width: int = 6, batch: int = 4):
    """Reduced-width FCNN (8, 4, 2) with random parameters and a batch."""
    from rustcast.nn.fcnn import FcnnParams

    rng = np.random.default_rng(seed)
    model = _randomize(FcnnParams.zeros(input_width, hidden=(8, 4, 2)), rng)
    x = rng.normal(size=(batch, input_width))
    y = np.arange(batch) % 2
    return model, x, y


def lstm_instance(seed: int = 0, input_width: int = 5, hidden: int = 4,
                  steps: int = 6, batch: int = 2):
    """Reduced LSTM (H=4, T=6, D=5) with random parameters and a batch."""
    from rustcast.nn.lstm import LstmParams

    rng = np.random.default_rng(seed)
    model = _randomize(LstmParams.zeros(input_width, hidden=hidden), rng)
    x = rng.normal(size=(batch, steps, input_width))
    y = np.arange(batch) % 2
    return model, x, y


def standard_checks(seed: int = 0, h: float = 1e-5, tol: float = 1e-5,
                    flip: str | None = None) -> dict[str, GradCheckReport]:
    """Run the reduced FCNN and LSTM checks.

    ``flip`` names a gradient block (e.g. ``"dense1.W"`` or ``"lstm0.W_hh"``)
    to negate in whichever model owns it, to confirm the checker catches it.
    """
    reports = {}
    for tag, make in (("fcnn", fcnn_instance), ("lstm", lstm_instance)):
        model, x, y = make(seed)
        if flip is not None and flip in model.named_arrays():
            model = SignFlipped(model, flip)
        reports[tag] = grad_check(model, x, y, h=h, tol=tol)
    return reports
