"""Backend selection for the LSTM recurrence kernels.

The compiled extension is used when importable; set ``RUSTCAST_BACKEND`` to
``python`` or ``compiled`` to force one. Tests and benchmarks can switch at
runtime with :func:`use_backend`.
"""

import os
from contextlib import contextmanager
from types import SimpleNamespace

from rustcast._kernels import _pure

try:
    from rustcast._kernels import _lstm_ext
except ImportError:  # extension not built
    _lstm_ext = None

_BACKENDS = {"python": _pure}
if _lstm_ext is not None:
    _BACKENDS["compiled"] = _lstm_ext


def available() -> list[str]:
    return sorted(_BACKENDS)


def _resolve(name: str):
    if name == "auto":
        name = "compiled" if "compiled" in _BACKENDS else "python"
    if name not in _BACKENDS:
        raise RuntimeError(f"kernel backend {name!r} is not available ({available()})")
    return name


_state = SimpleNamespace(name=_resolve(os.environ.get("RUSTCAST_BACKEND", "auto")))


def active() -> str:
    return _state.name


def set_backend(name: str) -> None:
    _state.name = _resolve(name)


@contextmanager
def use_backend(name: str):
    prev = _state.name
    set_backend(name)
    try:
        yield
    finally:
        _state.name = prev


def lstm_seq_forward(xproj, W_hh):
    return _BACKENDS[_state.name].lstm_seq_forward(xproj, W_hh)


def lstm_seq_backward(dh_seq, W_hh, hs, cs, gates, tanh_c):
    return _BACKENDS[_state.name].lstm_seq_backward(dh_seq, W_hh, hs, cs, gates, tanh_c)
