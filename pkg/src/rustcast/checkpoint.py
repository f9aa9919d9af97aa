"""Checkpoint files: a text header followed by raw little-endian float64 parameters.

Layout::

    rustcast-checkpoint 1
    arch=fcnn
    ...key=value lines...
    end_header
    <n_params * 8 bytes>

Parameters are written block by block in ``param_order``: for FCNN each dense
layer's W (out x in, row-major) then b; for LSTM each layer's W_ih, W_hh, b
with gate blocks in (i, f, g, o) order, then head W and head b.
"""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from rustcast import __version__
from rustcast.data.prep import NormStats
from rustcast.errors import CheckpointError
from rustcast.nn.fcnn import FcnnParams
from rustcast.nn.lstm import LstmParams

MAGIC = "rustcast-checkpoint 1"
END = "end_header"
_REQUIRED = {"arch", "input_width", "layer_widths", "norm_mean", "norm_std",
             "seed", "n_params", "param_order"}


@dataclass
class Checkpoint:
    model: object
    norm: NormStats
    seed: int
    meta: dict = field(default_factory=dict)


def _floats(values) -> str:
    return ",".join(repr(float(v)) for v in values)


def _layer_widths(model) -> list[int]:
    if model.arch == "fcnn":
        return [*model.hidden, 1]
    return [layer.hidden for layer in model.layers] + [1]


def save_checkpoint(path, model, norm: NormStats, seed: int, meta: dict | None = None) -> None:
    arrays = model.named_arrays()
    header = {
        "arch": model.arch,
        "input_width": str(model.input_width),
        "layer_widths": ",".join(str(w) for w in _layer_widths(model)),
        "n_features": str(len(norm.mean)),
        "norm_mean": _floats(norm.mean),
        "norm_std": _floats(norm.std),
        "seed": str(seed),
        "created_by": f"rustcast {__version__}",
        "n_params": str(sum(a.size for a in arrays.values())),
        "param_order": ",".join(
            f"{k}:{'x'.join(str(d) for d in a.shape)}" for k, a in arrays.items()
        ),
    }
    for k, v in (meta or {}).items():
        if k in header or "\n" in str(v) or "=" in str(k):
            raise CheckpointError(f"invalid metadata key {k!r}")
        header[k] = str(v)
    text = "\n".join([MAGIC, *(f"{k}={v}" for k, v in header.items()), END]) + "\n"
    blob = b"".join(np.ascontiguousarray(a, dtype="<f8").tobytes() for a in arrays.values())
    Path(path).write_bytes(text.encode("utf-8") + blob)


def load_checkpoint(path) -> Checkpoint:
    raw = Path(path).read_bytes()
    marker = ("\n" + END + "\n").encode()
    cut = raw.find(marker)
    if not raw.startswith(MAGIC.encode()) or cut < 0:
        raise CheckpointError(f"{path}: not a rustcast checkpoint")
    try:
        lines = raw[:cut].decode("utf-8").split("\n")[1:]
        header = dict(line.split("=", 1) for line in lines)
    except (UnicodeDecodeError, ValueError):
        raise CheckpointError(f"{path}: malformed header") from None
    missing = _REQUIRED - header.keys()
    if missing:
        raise CheckpointError(f"{path}: header lacks {', '.join(sorted(missing))}")
    blob = raw[cut + len(marker):]
    if len(blob) % 8:
        raise CheckpointError(f"{path}: parameter blob is truncated")

    arch = header["arch"]
    input_width = int(header["input_width"])
    widths = [int(w) for w in header["layer_widths"].split(",")]
    if arch == "fcnn":
        model = FcnnParams.zeros(input_width, hidden=tuple(widths[:-1]))
    elif arch == "lstm":
        model = LstmParams.zeros(input_width, hidden=widths[0], n_layers=len(widths) - 1)
    else:
        raise CheckpointError(f"{path}: unknown architecture {arch!r}")

    values = np.frombuffer(blob, dtype="<f8")
    arrays = model.named_arrays()
    expected = [f"{k}:{'x'.join(str(d) for d in a.shape)}" for k, a in arrays.items()]
    if header["param_order"].split(",") != expected:
        raise CheckpointError(f"{path}: parameter layout does not match {arch}")
    if values.size != sum(a.size for a in arrays.values()):
        raise CheckpointError(f"{path}: expected {header['n_params']} parameters, found {values.size}")
    pos = 0
    for a in arrays.values():
        a[...] = values[pos : pos + a.size].reshape(a.shape)
        pos += a.size

    norm = NormStats(
        np.array([float(v) for v in header["norm_mean"].split(",")]),
        np.array([float(v) for v in header["norm_std"].split(",")]),
    )
    reserved = {"arch", "input_width", "layer_widths", "n_features", "norm_mean",
                "norm_std", "seed", "n_params", "param_order"}
    meta = {k: v for k, v in header.items() if k not in reserved}
    return Checkpoint(model, norm, int(header["seed"]), meta)
