"""Two-layer LSTM classifier with exact backpropagation through time.

Stacked gate matrices use block order (input, forget, cell candidate,
output) along the 4H axis.
"""

from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from rustcast import _kernels
from rustcast.errors import ShapeMismatch, StaleCache
from rustcast.nn.activations import sigmoid
from rustcast.nn.dense import DenseLayer
from rustcast.nn.init import glorot_uniform

HIDDEN_SIZE = 50
N_LAYERS = 2


@dataclass
class LstmLayer:
    W_ih: np.ndarray  # (4H, D_in)
    W_hh: np.ndarray  # (4H, H)
    b: np.ndarray  # (4H,)

    @property
    def hidden(self) -> int:
        return self.W_hh.shape[1]

    @property
    def n_in(self) -> int:
        return self.W_ih.shape[1]

    @property
    def n_params(self) -> int:
        return self.W_ih.size + self.W_hh.size + self.b.size


def lstm_cell_forward(layer: LstmLayer, x_t, h_prev, c_prev):
    """Single time step for one sequence; returns ``(h, c, cache)``."""
    H = layer.hidden
    x_t = np.asarray(x_t, dtype=np.float64)
    h_prev = np.asarray(h_prev, dtype=np.float64)
    c_prev = np.asarray(c_prev, dtype=np.float64)
    if x_t.shape != (layer.n_in,) or h_prev.shape != (H,) or c_prev.shape != (H,):
        raise ShapeMismatch(
            f"cell expects x[{layer.n_in}], h[{H}], c[{H}]; got "
            f"{x_t.shape}, {h_prev.shape}, {c_prev.shape}"
        )
    a = layer.W_ih @ x_t + layer.W_hh @ h_prev + layer.b
    i = sigmoid(a[:H])
    f = sigmoid(a[H : 2 * H])
    g = np.tanh(a[2 * H : 3 * H])
    o = sigmoid(a[3 * H :])
    c = f * c_prev + i * g
    h = o * np.tanh(c)
    return h, c, {"i": i, "f": f, "g": g, "o": o, "a": a}


@dataclass
class LstmCache:
    signature: tuple
    inputs: list = field(default_factory=list)  # (T, B, D) input per layer
    states: list = field(default_factory=list)  # kernel outputs per layer
    single: bool = False

    @property
    def batch(self) -> int:
        return self.inputs[0].shape[1]


@dataclass
class LstmParams:
    layers: list[LstmLayer]
    head: DenseLayer
    arch: ClassVar[str] = "lstm"

    @classmethod
    def init(cls, input_width: int, rng: np.random.Generator,
             hidden: int = HIDDEN_SIZE, n_layers: int = N_LAYERS) -> "LstmParams":
        layers = []
        d_in = input_width
        for _ in range(n_layers):
            b = np.zeros(4 * hidden)
            b[hidden : 2 * hidden] = 1.0
            layers.append(LstmLayer(
                glorot_uniform(rng, 4 * hidden, d_in),
                glorot_uniform(rng, 4 * hidden, hidden),
                b,
            ))
            d_in = hidden
        head = DenseLayer(glorot_uniform(rng, 1, hidden), np.zeros(1))
        return cls(layers, head)

    @classmethod
    def zeros(cls, input_width: int, hidden: int = HIDDEN_SIZE,
              n_layers: int = N_LAYERS) -> "LstmParams":
        layers = []
        d_in = input_width
        for _ in range(n_layers):
            layers.append(LstmLayer(
                np.zeros((4 * hidden, d_in)),
                np.zeros((4 * hidden, hidden)),
                np.zeros(4 * hidden),
            ))
            d_in = hidden
        return cls(layers, DenseLayer(np.zeros((1, hidden)), np.zeros(1)))

    @property
    def input_width(self) -> int:
        return self.layers[0].n_in

    @property
    def hidden(self) -> int:
        return self.layers[0].hidden

    @property
    def n_params(self) -> int:
        return sum(layer.n_params for layer in self.layers) + self.head.n_params

    def signature(self) -> tuple:
        shapes = [(l.W_ih.shape, l.W_hh.shape) for l in self.layers]
        return (tuple(shapes), self.head.W.shape)

    def named_arrays(self) -> dict[str, np.ndarray]:
        out = {}
        for i, layer in enumerate(self.layers):
            out[f"lstm{i}.W_ih"] = layer.W_ih
            out[f"lstm{i}.W_hh"] = layer.W_hh
            out[f"lstm{i}.b"] = layer.b
        out["head.W"] = self.head.W
        out["head.b"] = self.head.b
        return out

    def copy(self) -> "LstmParams":
        return LstmParams(
            [LstmLayer(l.W_ih.copy(), l.W_hh.copy(), l.b.copy()) for l in self.layers],
            DenseLayer(self.head.W.copy(), self.head.b.copy()),
        )

    def prepare_inputs(self, windows: np.ndarray) -> np.ndarray:
        return np.asarray(windows, dtype=np.float64)

    def forward(self, x):
        return lstm_forward(self, x)

    def backward(self, cache, dlogits):
        return lstm_backward(self, cache, dlogits)


def lstm_forward(params: LstmParams, x):
    """Logits for sequences ``x`` of shape (B, T, D), or a scalar for (T, D).

    Initial hidden and cell states are zero; the head reads the final hidden
    state of the top layer.
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 2
    if single:
        x = x[None]
    if x.ndim != 3 or x.shape[1] < 1 or x.shape[2] != params.input_width:
        raise ShapeMismatch(
            f"lstm expects (batch, T>=1, {params.input_width}) input, got {x.shape}"
        )
    cache = LstmCache(params.signature(), single=single)
    seq = np.ascontiguousarray(x.transpose(1, 0, 2))  # time-major
    for layer in params.layers:
        T, B, D = seq.shape
        xproj = (seq.reshape(T * B, D) @ layer.W_ih.T + layer.b).reshape(T, B, -1)
        states = _kernels.lstm_seq_forward(xproj, layer.W_hh)
        cache.inputs.append(seq)
        cache.states.append(states)
        seq = states[0][1:]
    h_last = seq[-1]
    logits = (h_last @ params.head.W.T + params.head.b)[:, 0]
    if single:
        return float(logits[0]), cache
    return logits, cache


def lstm_backward(params: LstmParams, cache: LstmCache, dlogits) -> dict[str, np.ndarray]:
    dlogits = np.asarray(dlogits, dtype=np.float64).reshape(-1)
    if cache.signature != params.signature() or dlogits.shape[0] != cache.batch:
        raise StaleCache("cache does not belong to these parameters / batch")
    grads = {}
    top_states = cache.states[-1]
    h_last = top_states[0][-1]
    grads["head.W"] = dlogits[None, :] @ h_last
    grads["head.b"] = np.array([dlogits.sum()])

    T, B, _ = cache.inputs[0].shape
    dh_seq = np.zeros((T, B, params.hidden))
    dh_seq[-1] = dlogits[:, None] * params.head.W[0]
    for idx in range(len(params.layers) - 1, -1, -1):
        layer = params.layers[idx]
        hs, cs, gates, tanh_c = cache.states[idx]
        da, dW_hh = _kernels.lstm_seq_backward(dh_seq, layer.W_hh, hs, cs, gates, tanh_c)
        x_in = cache.inputs[idx]
        da2 = da.reshape(T * B, -1)
        grads[f"lstm{idx}.W_ih"] = da2.T @ x_in.reshape(T * B, -1)
        grads[f"lstm{idx}.W_hh"] = dW_hh
        grads[f"lstm{idx}.b"] = da2.sum(axis=0)
        if idx > 0:
            dh_seq = (da2 @ layer.W_ih).reshape(T, B, -1)
    return {name: grads[name] for name in params.named_arrays()}
