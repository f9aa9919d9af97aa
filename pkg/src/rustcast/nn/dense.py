from dataclasses import dataclass

import numpy as np

from rustcast.errors import ShapeMismatch


@dataclass
class DenseLayer:
    """Affine map ``x @ W.T + b`` with ``W`` stored as (out, in)."""

    W: np.ndarray
    b: np.ndarray

    @property
    def n_in(self) -> int:
        return self.W.shape[1]

    @property
    def n_out(self) -> int:
        return self.W.shape[0]

    @property
    def n_params(self) -> int:
        return self.W.size + self.b.size


def dense_forward(layer: DenseLayer, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != layer.n_in:
        raise ShapeMismatch(
            f"dense layer expects {layer.n_in} input columns, got shape {x.shape}"
        )
    return x @ layer.W.T + layer.b


def dense_backward(layer: DenseLayer, x: np.ndarray, dout: np.ndarray):
    """Return (dW, db, dx) for upstream gradient ``dout`` (batch, out)."""
    dW = dout.T @ x
    db = dout.sum(axis=0)
    dx = dout @ layer.W
    return dW, db, dx
