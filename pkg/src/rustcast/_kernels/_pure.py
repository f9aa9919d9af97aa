"""Numpy reference implementation of the LSTM recurrence kernels.

Arrays are time-major. Gate blocks along the last axis are ordered
(input, forget, cell candidate, output).
"""

import numpy as np

from rustcast.nn.activations import sigmoid


def lstm_seq_forward(xproj, W_hh):
    """Run one LSTM layer over a sequence.

    Args:
        xproj: (T, B, 4H) input projections ``x_t @ W_ih.T + b``.
        W_hh: (4H, H) recurrent weights.

    Returns:
        ``(hs, cs, gates, tanh_c)`` where ``hs`` and ``cs`` are (T+1, B, H)
        with the zero initial state at index 0, ``gates`` holds the
        activated gates (T, B, 4H) and ``tanh_c`` is tanh of ``cs[1:]``.
    """
    T, B, H4 = xproj.shape
    H = H4 // 4
    hs = np.zeros((T + 1, B, H))
    cs = np.zeros((T + 1, B, H))
    gates = np.empty((T, B, H4))
    tanh_c = np.empty((T, B, H))
    for t in range(T):
        a = xproj[t] + hs[t] @ W_hh.T
        g = gates[t]
        g[:, : 2 * H] = sigmoid(a[:, : 2 * H])
        g[:, 2 * H : 3 * H] = np.tanh(a[:, 2 * H : 3 * H])
        g[:, 3 * H :] = sigmoid(a[:, 3 * H :])
        cs[t + 1] = g[:, H : 2 * H] * cs[t] + g[:, :H] * g[:, 2 * H : 3 * H]
        tanh_c[t] = np.tanh(cs[t + 1])
        hs[t + 1] = g[:, 3 * H :] * tanh_c[t]
    return hs, cs, gates, tanh_c


def lstm_seq_backward(dh_seq, W_hh, hs, cs, gates, tanh_c):
    """Backpropagate through time for one layer.

    Args:
        dh_seq: (T, B, H) loss gradient arriving at each hidden output from
            above (next layer or head).

    Returns:
        ``(da, dW_hh)``: gradients w.r.t. the gate pre-activations (T, B, 4H)
        and the recurrent weights (4H, H).
    """
    T, B, H = dh_seq.shape
    da = np.empty((T, B, 4 * H))
    dW_hh = np.zeros_like(W_hh)
    dh_next = np.zeros((B, H))
    dc_next = np.zeros((B, H))
    for t in range(T - 1, -1, -1):
        g = gates[t]
        i, f, gg, o = g[:, :H], g[:, H : 2 * H], g[:, 2 * H : 3 * H], g[:, 3 * H :]
        tc = tanh_c[t]
        dh = dh_seq[t] + dh_next
        dc = dc_next + dh * o * (1.0 - tc * tc)
        d = da[t]
        d[:, :H] = dc * gg * i * (1.0 - i)
        d[:, H : 2 * H] = dc * cs[t] * f * (1.0 - f)
        d[:, 2 * H : 3 * H] = dc * i * (1.0 - gg * gg)
        d[:, 3 * H :] = dh * tc * o * (1.0 - o)
        dW_hh += d.T @ hs[t]
        dh_next = d @ W_hh
        dc_next = dc * f
    return da, dW_hh
