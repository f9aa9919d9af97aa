"""Compare the compiled LSTM recurrence with the pure numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeats 50]

Times forward and backward passes of ``lstm_forward``/``lstm_backward`` on a
full-size model (2 x 50 units, 43 inputs, 12 steps) for each available
backend, and checks that the backends agree.
"""

import argparse
import timeit

import numpy as np

from rustcast import _kernels
from rustcast.nn import LstmParams, lstm_backward, lstm_forward


def bench(batch: int, repeats: int):
    rng = np.random.default_rng(0)
    model = LstmParams.init(43, rng)
    x = rng.normal(size=(batch, 12, 43))
    dlogits = rng.normal(size=batch) / batch
    rows, outputs = {}, {}
    for name in _kernels.available():
        with _kernels.use_backend(name):
            logits, cache = lstm_forward(model, x)
            grads = lstm_backward(model, cache, dlogits)
            fwd = min(timeit.repeat(lambda: lstm_forward(model, x), number=1, repeat=repeats))
            bwd = min(timeit.repeat(lambda: lstm_backward(model, cache, dlogits),
                                    number=1, repeat=repeats))
        rows[name] = (fwd * 1e3, bwd * 1e3)
        outputs[name] = (logits, grads)
    return rows, outputs


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=50)
    ap.add_argument("--batches", default="1,32,256")
    args = ap.parse_args(argv)
    print(f"backends: {', '.join(_kernels.available())}")
    print(f"{'batch':>6} {'backend':>9} {'forward ms':>11} {'backward ms':>12}")
    for batch in (int(b) for b in args.batches.split(",")):
        rows, outputs = bench(batch, args.repeats)
        for name, (f, b) in rows.items():
            print(f"{batch:>6} {name:>9} {f:>11.3f} {b:>12.3f}")
        if len(outputs) == 2:
            (la, ga), (lb, gb) = outputs.values()
            diff = max(np.max(np.abs(la - lb)),
                       *(np.max(np.abs(ga[k] - gb[k])) for k in ga))
            print(f"{batch:>6} {'max |diff|':>9} {diff:.2e}")


if __name__ == "__main__":
    main()
