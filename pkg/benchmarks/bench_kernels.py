"""Benchmark: compiled LSTM kernels vs the numpy fallback.

Run:  python benchmarks/bench_kernels.py
The same comparison at the encoder level (forward + backward + one training
step) shows what the extension buys for end-to-end training.
"""

from __future__ import annotations

import time

import numpy as np

from hawk.learn import EncoderConfig, SequenceEncoder, weighted_bce
from hawk.learn import _kernels_py
from hawk.learn.backend import BACKEND

try:
    from hawk.learn import _kernels as compiled
except ImportError:
    compiled = None


def time_fn(fn, repeats=30):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(T=256, D=24, H=32, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(T, D))
    wx = rng.normal(size=(D, 4 * H)) * 0.1
    wh = rng.normal(size=(H, 4 * H)) * 0.1
    b = np.zeros(4 * H)
    dh = rng.normal(size=(T, H))

    rows = []
    for name, mod in (("numpy", _kernels_py), ("cython", compiled)):
        if mod is None:
            continue
        h, c, g = mod.lstm_forward(x, wx, wh, b)
        h, c, g = np.asarray(h), np.asarray(c), np.asarray(g)
        fwd = time_fn(lambda m=mod: m.lstm_forward(x, wx, wh, b))
        bwd = time_fn(lambda m=mod: m.lstm_backward(x, wx, wh, h, c, g, dh))
        rows.append((name, fwd, bwd))
    return rows


def bench_encoder_step(T=128, D=24, seed=1):
    rng = np.random.default_rng(seed)
    seq = rng.normal(size=(T, D))
    y = np.asarray([1.0])

    def one_step(enc):
        _, pooled = enc.forward(seq)
        p = enc.head_score(pooled)
        _, dp = weighted_bce(np.asarray([p]), y, pos_weight=9.0)
        enc.backward_from_pooled(enc.head_backward(float(dp[0])))

    enc = SequenceEncoder(EncoderConfig(input_dim=D, hidden=32, layers=2, dropout=0.0), seed=3)
    return time_fn(lambda: one_step(enc), repeats=10)


def main():
    print(f"active backend: {BACKEND}")
    print(f"{'kernel':<22}{'numpy':>12}{'cython':>12}{'speedup':>10}")
    rows = bench_kernels()
    by_name = {name: (fwd, bwd) for name, fwd, bwd in rows}
    if "cython" in by_name:
        for which, idx in (("lstm_forward  T=256", 0), ("lstm_backward T=256", 1)):
            np_t = by_name["numpy"][idx]
            cy_t = by_name["cython"][idx]
            print(f"{which:<22}{np_t * 1e3:>10.2f}ms{cy_t * 1e3:>10.2f}ms{np_t / cy_t:>9.1f}x")
    else:
        for which, idx in (("lstm_forward  T=256", 0), ("lstm_backward T=256", 1)):
            print(f"{which:<22}{by_name['numpy'][idx] * 1e3:>10.2f}ms {'(extension not built)':>22}")

    step = bench_encoder_step()
    print(f"\nencoder train step (T=128, H=32, {BACKEND} backend): {step * 1e3:.2f} ms")
    print("set HAWK_PURE_PYTHON=1 and re-run to time the fallback end to end")


if __name__ == "__main__":
    main()
