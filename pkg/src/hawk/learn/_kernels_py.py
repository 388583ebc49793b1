"""Pure-numpy LSTM sequence kernels (fallback for the compiled extension).

Both backends implement the same recurrence with gate order [i, f, g, o]
along the 4H axis; results agree to floating-point rounding.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def lstm_forward(x, wx, wh, b):
    """x (T,D) -> h (T,H), c (T,H), gates (T,4H) with activations applied."""
    T = x.shape[0]
    H = wh.shape[0]
    h = np.zeros((T, H))
    c = np.zeros((T, H))
    gates = np.zeros((T, 4 * H))
    h_prev = np.zeros(H)
    c_prev = np.zeros(H)
    for t in range(T):
        z = x[t] @ wx + h_prev @ wh + b
        i = _sigmoid(z[:H])
        f = _sigmoid(z[H : 2 * H])
        g = np.tanh(z[2 * H : 3 * H])
        o = _sigmoid(z[3 * H :])
        c_t = f * c_prev + i * g
        h_t = o * np.tanh(c_t)
        gates[t, :H] = i
        gates[t, H : 2 * H] = f
        gates[t, 2 * H : 3 * H] = g
        gates[t, 3 * H :] = o
        c[t] = c_t
        h[t] = h_t
        h_prev, c_prev = h_t, c_t
    return h, c, gates


def lstm_backward(x, wx, wh, h, c, gates, dh_out):
    """Gradient of sum(dh_out * h) w.r.t. x, wx, wh, b."""
    T, D = x.shape
    H = wh.shape[0]
    dx = np.zeros_like(x)
    dwx = np.zeros_like(wx)
    dwh = np.zeros_like(wh)
    db = np.zeros(4 * H)
    dh_next = np.zeros(H)
    dc_next = np.zeros(H)
    for t in range(T - 1, -1, -1):
        i = gates[t, :H]
        f = gates[t, H : 2 * H]
        g = gates[t, 2 * H : 3 * H]
        o = gates[t, 3 * H :]
        c_prev = c[t - 1] if t > 0 else np.zeros(H)
        h_prev = h[t - 1] if t > 0 else np.zeros(H)
        tc = np.tanh(c[t])
        dh = dh_out[t] + dh_next
        do = dh * tc
        dc = dc_next + dh * o * (1.0 - tc * tc)
        di = dc * g
        df = dc * c_prev
        dg = dc * i
        dz = np.concatenate([
            di * i * (1.0 - i),
            df * f * (1.0 - f),
            dg * (1.0 - g * g),
            do * o * (1.0 - o),
        ])
        dx[t] = dz @ wx.T
        dh_next = dz @ wh.T
        dc_next = dc * f
        dwx += np.outer(x[t], dz)
        dwh += np.outer(h_prev, dz)
        db += dz
    return dx, dwx, dwh, db
