"""Dense binary classifier (ELU hidden layers, scalar sigmoid output) and the
shared per-sample training loop used by every gradient-trained model."""

from __future__ import annotations

import numpy as np

from ..errors import NonFiniteLoss
from .layers import Dense, ELU, Sigmoid, weighted_bce
from .optim import Adam


class BinaryNet:
    def __init__(self, dim_in: int, hidden: tuple[int, ...] = (8, 8), seed: int = 0):
        rng = np.random.Generator(np.random.PCG64(seed))
        self.layers = []
        dim = dim_in
        for width in hidden:
            self.layers.append(Dense(rng, dim, width))
            self.layers.append(ELU())
            dim = width
        self.out = Dense(rng, dim, 1)
        self.sigmoid = Sigmoid()

    def parameters(self):
        params = []
        for i, layer in enumerate(self.layers):
            params += [(f"l{i}.{n}", p) for n, p in layer.parameters()]
        params += [(f"out.{n}", p) for n, p in self.out.parameters()]
        return params

    def forward(self, x: np.ndarray) -> float:
        h = np.asarray(x, dtype=np.float64)
        for layer in self.layers:
            h = layer.forward(h)
        return float(self.sigmoid.forward(self.out.forward(h))[0])

    def backward(self, dscore: float) -> np.ndarray:
        grad = self.sigmoid.backward(np.asarray([dscore]))
        grad = self.out.backward(grad)
        for layer in reversed(self.layers):
            grad = layer.backward(grad)
        return grad

    def state_arrays(self) -> dict[str, np.ndarray]:
        return {name: p.value for name, p in self.parameters()}

    def load_state(self, arrays: dict[str, np.ndarray]) -> None:
        for name, p in self.parameters():
            p.value[...] = arrays[name]


def train_binary(
    model,
    forward_fn,
    backward_fn,
    data: list,
    labels: np.ndarray,
    *,
    epochs: int = 100,
    lr: float = 1e-3,
    pos_weight: float = 9.0,
    seed: int = 0,
) -> list[float]:
    """Per-sample Adam training with weighted BCE; returns per-epoch loss.

    ``forward_fn(sample, rng)`` must produce a probability; ``backward_fn``
    receives dL/dp and must populate parameter gradients. Deterministic for a
    fixed seed. Raises NonFiniteLoss with the offending epoch.
    """
    labels = np.asarray(labels, dtype=np.float64)
    opt = Adam(model.parameters(), lr=lr)
    rng = np.random.Generator(np.random.PCG64(seed))
    history = []
    order = np.arange(len(data))
    for epoch in range(epochs):
        rng.shuffle(order)
        total = 0.0
        for idx in order:
            p = forward_fn(data[idx], rng)
            loss, dp = weighted_bce(np.asarray([p]), np.asarray([labels[idx]]), pos_weight)
            if not np.isfinite(loss):
                raise NonFiniteLoss(epoch)
            opt.zero_grad()
            backward_fn(float(dp[0]))
            opt.step()
            total += loss
        history.append(total / max(len(data), 1))
    return history
