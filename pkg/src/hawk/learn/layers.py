"""Minimal layer primitives with manual backprop (float64 throughout).

Every module keeps its parameters as Param objects; ``parameters()`` yields
(name, Param) pairs in a fixed order so optimizers and checkpoints stay
deterministic.
"""

from __future__ import annotations

import numpy as np

from .backend import lstm_backward, lstm_forward


class Param:
    __slots__ = ("value", "grad")

    def __init__(self, value: np.ndarray):
        self.value = np.asarray(value, dtype=np.float64)
        self.grad = np.zeros_like(self.value)

    def zero_grad(self):
        self.grad[...] = 0.0


def xavier(rng: np.random.Generator, fan_in: int, fan_out: int, shape) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


class Dense:
    """y = x @ W + b for (T, in) or (in,) inputs."""

    def __init__(self, rng: np.random.Generator, dim_in: int, dim_out: int):
        self.w = Param(xavier(rng, dim_in, dim_out, (dim_in, dim_out)))
        self.b = Param(np.zeros(dim_out))
        self._x = None

    def parameters(self):
        return [("w", self.w), ("b", self.b)]

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._x = x
        return x @ self.w.value + self.b.value

    def backward(self, grad: np.ndarray) -> np.ndarray:
        x = self._x
        if x.ndim == 1:
            self.w.grad += np.outer(x, grad)
            self.b.grad += grad
        else:
            self.w.grad += x.T @ grad
            self.b.grad += grad.sum(axis=0)
        return grad @ self.w.value.T


class ELU:
    def __init__(self, alpha: float = 1.0):
        self.alpha = alpha
        self._x = None

    def parameters(self):
        return []

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._x = x
        return np.where(x > 0, x, self.alpha * (np.exp(np.minimum(x, 0.0)) - 1.0))

    def backward(self, grad: np.ndarray) -> np.ndarray:
        x = self._x
        return grad * np.where(x > 0, 1.0, self.alpha * np.exp(np.minimum(x, 0.0)))


class Sigmoid:
    def __init__(self):
        self._y = None

    def parameters(self):
        return []

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._y = 1.0 / (1.0 + np.exp(-x))
        return self._y

    def backward(self, grad: np.ndarray) -> np.ndarray:
        return grad * self._y * (1.0 - self._y)


class LSTMLayer:
    """Single LSTM layer over a (T, D) sequence; gate order [i, f, g, o]."""

    def __init__(self, rng: np.random.Generator, dim_in: int, hidden: int):
        self.hidden = hidden
        self.wx = Param(xavier(rng, dim_in, 4 * hidden, (dim_in, 4 * hidden)))
        self.wh = Param(xavier(rng, hidden, 4 * hidden, (hidden, 4 * hidden)))
        b = np.zeros(4 * hidden)
        b[hidden : 2 * hidden] = 1.0  # forget-gate bias
        self.b = Param(b)
        self._cache = None

    def parameters(self):
        return [("wx", self.wx), ("wh", self.wh), ("b", self.b)]

    def forward(self, x: np.ndarray) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=np.float64)
        h, c, gates = lstm_forward(x, self.wx.value, self.wh.value, self.b.value)
        h = np.asarray(h)
        self._cache = (x, h, np.asarray(c), np.asarray(gates))
        return h

    def backward(self, dh_out: np.ndarray) -> np.ndarray:
        x, h, c, gates = self._cache
        dh_out = np.ascontiguousarray(dh_out, dtype=np.float64)
        dx, dwx, dwh, db = lstm_backward(x, self.wx.value, self.wh.value, h, c, gates, dh_out)
        self.wx.grad += dwx
        self.wh.grad += dwh
        self.b.grad += db
        return np.asarray(dx)


class LuongAttention:
    """Per-step attention: a_i = sum_j softmax_j((Wq h_i) . (Wk h_j)) h_j."""

    def __init__(self, rng: np.random.Generator, hidden: int, attn_dim: int | None = None):
        attn_dim = attn_dim or hidden
        self.wq = Param(xavier(rng, hidden, attn_dim, (attn_dim, hidden)))
        self.wk = Param(xavier(rng, hidden, attn_dim, (attn_dim, hidden)))
        self._cache = None

    def parameters(self):
        return [("wq", self.wq), ("wk", self.wk)]

    def forward(self, h: np.ndarray) -> np.ndarray:
        q = h @ self.wq.value.T
        k = h @ self.wk.value.T
        scores = q @ k.T
        scores = scores - scores.max(axis=1, keepdims=True)
        e = np.exp(scores)
        p = e / e.sum(axis=1, keepdims=True)
        a = p @ h
        self._cache = (h, q, k, p)
        return a

    def attention_weights(self, h: np.ndarray) -> np.ndarray:
        self.forward(h)
        return self._cache[3]

    def backward(self, da: np.ndarray) -> np.ndarray:
        h, q, k, p = self._cache
        dp = da @ h.T
        dh = p.T @ da
        ds = p * (dp - (dp * p).sum(axis=1, keepdims=True))
        dq = ds @ k
        dk = ds.T @ q
        self.wq.grad += dq.T @ h
        self.wk.grad += dk.T @ h
        dh += dq @ self.wq.value + dk @ self.wk.value
        return dh


class Dropout:
    """Inverted dropout; identity when not training."""

    def __init__(self, rate: float):
        self.rate = rate
        self._mask = None

    def parameters(self):
        return []

    def forward(self, x: np.ndarray, rng: np.random.Generator | None = None) -> np.ndarray:
        if rng is None or self.rate <= 0.0:
            self._mask = None
            return x
        keep = 1.0 - self.rate
        self._mask = (rng.random(x.shape) < keep) / keep
        return x * self._mask

    def backward(self, grad: np.ndarray) -> np.ndarray:
        if self._mask is None:
            return grad
        return grad * self._mask


def weighted_bce(p: np.ndarray, y: np.ndarray, pos_weight: float = 1.0, eps: float = 1e-12):
    """Weighted binary cross-entropy over a batch of probabilities.

    Returns (loss, dL/dp). The positive class is weighted by ``pos_weight``.
    """
    p = np.clip(np.asarray(p, dtype=np.float64), eps, 1.0 - eps)
    y = np.asarray(y, dtype=np.float64)
    w = np.where(y > 0.5, pos_weight, 1.0)
    n = p.size if p.ndim else 1
    loss = float(-(w * (y * np.log(p) + (1.0 - y) * np.log(1.0 - p))).sum() / n)
    grad = w * (p - y) / (p * (1.0 - p)) / n
    return loss, grad
