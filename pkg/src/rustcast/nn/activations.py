import numpy as np


def relu(x):
    return np.maximum(x, 0.0)


def relu_grad(x):
    """Subgradient of relu; 0 at exactly 0."""
    return (np.asarray(x) > 0.0).astype(np.float64)


def sigmoid(x):
    """Logistic function, evaluated without overflow for any float64 input."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    if out.ndim == 0:
        return float(out)
    return out


def sigmoid_grad(x):
    s = sigmoid(x)
    return s * (1.0 - s)


def softplus(x):
    """log(1 + exp(x)) without overflow."""
    x = np.asarray(x, dtype=np.float64)
    return np.maximum(x, 0.0) + np.log1p(np.exp(-np.abs(x)))
