from dataclasses import dataclass

import numpy as np

from rustcast.errors import ShapeMismatch


@dataclass
class AdamState:
    m: dict
    v: dict
    t: int = 0
    lr: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def fresh(cls, params, **hyper) -> "AdamState":
        arrays = params.named_arrays() if hasattr(params, "named_arrays") else params
        return cls(
            m={k: np.zeros_like(a) for k, a in arrays.items()},
            v={k: np.zeros_like(a) for k, a in arrays.items()},
            **hyper,
        )


def adam_step(params, grads: dict, state: AdamState):
    """Apply one bias-corrected Adam update in place.

    ``params`` is a model exposing ``named_arrays()`` or a plain dict of
    arrays. Returns ``(params, state)``.
    """
    arrays = params.named_arrays() if hasattr(params, "named_arrays") else params
    if arrays.keys() != grads.keys() or arrays.keys() != state.m.keys():
        raise ShapeMismatch("parameter, gradient and moment blocks differ")
    for name, theta in arrays.items():
        if grads[name].shape != theta.shape or state.m[name].shape != theta.shape:
            raise ShapeMismatch(f"block {name}: shape mismatch")

    state.t += 1
    b1, b2 = state.beta1, state.beta2
    c1 = 1.0 - b1 ** state.t
    c2 = 1.0 - b2 ** state.t
    for name, theta in arrays.items():
        g = grads[name]
        m = state.m[name]
        v = state.v[name]
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * (g * g)
        theta -= state.lr * (m / c1) / (np.sqrt(v / c2) + state.eps)
    return params, state
