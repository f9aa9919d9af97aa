"""Fully connected binary classifier: ReLU hidden stack, single logit output."""

from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from rustcast.errors import ShapeMismatch, StaleCache
from rustcast.nn.activations import relu, relu_grad
from rustcast.nn.dense import DenseLayer, dense_backward, dense_forward
from rustcast.nn.init import glorot_uniform, he_uniform

HIDDEN_WIDTHS = (128, 64, 32)


@dataclass
class FcnnCache:
    signature: tuple
    inputs: list = field(default_factory=list)  # input to each dense layer
    pre: list = field(default_factory=list)  # pre-activation of each hidden layer

    @property
    def batch(self) -> int:
        return self.inputs[0].shape[0]


@dataclass
class FcnnParams:
    layers: list[DenseLayer]
    arch: ClassVar[str] = "fcnn"

    @classmethod
    def init(cls, input_width: int, rng: np.random.Generator,
             hidden=HIDDEN_WIDTHS) -> "FcnnParams":
        widths = [input_width, *hidden]
        layers = [
            DenseLayer(he_uniform(rng, n_out, n_in), np.zeros(n_out))
            for n_in, n_out in zip(widths[:-1], widths[1:])
        ]
        layers.append(DenseLayer(glorot_uniform(rng, 1, widths[-1]), np.zeros(1)))
        return cls(layers)

    @classmethod
    def zeros(cls, input_width: int, hidden=HIDDEN_WIDTHS) -> "FcnnParams":
        widths = [input_width, *hidden, 1]
        return cls([
            DenseLayer(np.zeros((n_out, n_in)), np.zeros(n_out))
            for n_in, n_out in zip(widths[:-1], widths[1:])
        ])

    @property
    def input_width(self) -> int:
        return self.layers[0].n_in

    @property
    def hidden(self) -> tuple:
        return tuple(layer.n_out for layer in self.layers[:-1])

    @property
    def n_params(self) -> int:
        return sum(layer.n_params for layer in self.layers)

    def signature(self) -> tuple:
        return tuple(layer.W.shape for layer in self.layers)

    def named_arrays(self) -> dict[str, np.ndarray]:
        out = {}
        for i, layer in enumerate(self.layers):
            out[f"dense{i}.W"] = layer.W
            out[f"dense{i}.b"] = layer.b
        return out

    def copy(self) -> "FcnnParams":
        return FcnnParams([DenseLayer(l.W.copy(), l.b.copy()) for l in self.layers])

    def prepare_inputs(self, windows: np.ndarray) -> np.ndarray:
        """Flatten (batch, months, features) windows row-major."""
        windows = np.asarray(windows, dtype=np.float64)
        return windows.reshape(windows.shape[0], -1)

    def forward(self, x):
        return fcnn_forward(self, x)

    def backward(self, cache, dlogits):
        return fcnn_backward(self, cache, dlogits)


def fcnn_forward(params: FcnnParams, x: np.ndarray):
    """Return ``(logits, cache)`` for a (batch, input_width) matrix."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != params.input_width:
        raise ShapeMismatch(
            f"fcnn expects (batch, {params.input_width}) input, got {x.shape}"
        )
    cache = FcnnCache(params.signature())
    a = x
    for layer in params.layers[:-1]:
        cache.inputs.append(a)
        z = dense_forward(layer, a)
        cache.pre.append(z)
        a = relu(z)
    cache.inputs.append(a)
    logits = dense_forward(params.layers[-1], a)[:, 0]
    return logits, cache


def fcnn_backward(params: FcnnParams, cache: FcnnCache, dlogits) -> dict[str, np.ndarray]:
    """Gradients of the loss given ``dlogits`` = dL/dlogit per example.

    ``dlogits`` must already carry any batch averaging; gradients are sums
    over the batch.
    """
    dlogits = np.asarray(dlogits, dtype=np.float64).reshape(-1)
    if cache.signature != params.signature() or dlogits.shape[0] != cache.batch:
        raise StaleCache("cache does not belong to these parameters / batch")
    grads = {}
    n = len(params.layers)
    d = dlogits[:, None]
    for i in range(n - 1, -1, -1):
        layer = params.layers[i]
        dW, db, dx = dense_backward(layer, cache.inputs[i], d)
        grads[f"dense{i}.W"] = dW
        grads[f"dense{i}.b"] = db
        if i > 0:
            d = dx * relu_grad(cache.pre[i - 1])
    return {name: grads[name] for name in params.named_arrays()}
