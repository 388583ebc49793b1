"""LSTM-attention sequence encoder.

Architecture per stream: L stacked LSTM layers (inter-layer dropout from the
second layer on), Luong-style attention over the top hidden states, the
concatenation [a_n || h_n], two dense layers producing the per-step output
w_n of width E, and mean pooling over the steps. During training a scalar
sigmoid head sits on the pooled output; it is discarded once the encoder is
frozen and only the embeddings are reused.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptySequence
from .layers import Dense, ELU, Dropout, LSTMLayer, LuongAttention, Sigmoid


@dataclass(frozen=True)
class EncoderConfig:
    input_dim: int
    hidden: int = 32
    layers: int = 2
    dropout: float = 0.2
    dense_dim: int = 32
    out_dim: int = 16
    max_len: int = 512
    truncation: str = "decimate"  # decimate keeps whole-match coverage


class SequenceEncoder:
    def __init__(self, config: EncoderConfig, seed: int = 0):
        self.config = config
        rng = np.random.Generator(np.random.PCG64(seed))
        self.lstm_layers = []
        dim = config.input_dim
        for _ in range(config.layers):
            self.lstm_layers.append(LSTMLayer(rng, dim, config.hidden))
            dim = config.hidden
        self.dropouts = [Dropout(config.dropout) for _ in range(max(0, config.layers - 1))]
        self.attention = LuongAttention(rng, config.hidden)
        self.dense1 = Dense(rng, 2 * config.hidden, config.dense_dim)
        self.elu = ELU()
        self.dense2 = Dense(rng, config.dense_dim, config.out_dim)
        self.head = Dense(rng, config.out_dim, 1)
        self.head_sigmoid = Sigmoid()
        self._cache_t = 0

    def parameters(self, include_head: bool = True):
        out = []
        for li, layer in enumerate(self.lstm_layers):
            out += [(f"lstm{li}.{n}", p) for n, p in layer.parameters()]
        out += [(f"attn.{n}", p) for n, p in self.attention.parameters()]
        out += [(f"dense1.{n}", p) for n, p in self.dense1.parameters()]
        out += [(f"dense2.{n}", p) for n, p in self.dense2.parameters()]
        if include_head:
            out += [(f"head.{n}", p) for n, p in self.head.parameters()]
        return out

    def prepare(self, seq: np.ndarray) -> np.ndarray:
        """Clamp sequence length per config (decimate keeps every k-th row)."""
        seq = np.asarray(seq, dtype=np.float64)
        max_len = self.config.max_len
        if max_len and seq.shape[0] > max_len:
            if self.config.truncation == "decimate":
                step = int(np.ceil(seq.shape[0] / max_len))
                seq = seq[::step]
            else:
                seq = seq[:max_len]
        return seq

    def forward(self, seq: np.ndarray, train_rng: np.random.Generator | None = None):
        """Per-step outputs (T, E) and the mean-pooled embedding (E,)."""
        seq = self.prepare(seq)
        if seq.shape[0] == 0:
            raise EmptySequence("encoder requires at least one step")
        h = seq
        for li, layer in enumerate(self.lstm_layers):
            if li > 0:
                h = self.dropouts[li - 1].forward(h, train_rng)
            h = layer.forward(h)
        a = self.attention.forward(h)
        z = np.concatenate([a, h], axis=1)
        u = self.elu.forward(self.dense1.forward(z))
        steps = self.dense2.forward(u)
        self._cache_t = steps.shape[0]
        pooled = steps.sum(axis=0) / steps.shape[0]
        return steps, pooled

    def backward_from_pooled(self, dpooled: np.ndarray, dsteps: np.ndarray | None = None):
        """Backprop given gradients on the pooled output (and per-step ones)."""
        t = self._cache_t
        grad_steps = np.tile(dpooled / t, (t, 1))
        if dsteps is not None:
            grad_steps = grad_steps + dsteps
        du = self.dense2.backward(grad_steps)
        dz = self.dense1.backward(self.elu.backward(du))
        hidden = self.config.hidden
        da, dh_direct = dz[:, :hidden], dz[:, hidden:]
        dh = self.attention.backward(da) + dh_direct
        for li in range(len(self.lstm_layers) - 1, -1, -1):
            dh = self.lstm_layers[li].backward(dh)
            if li > 0:
                dh = self.dropouts[li - 1].backward(dh)
        return dh

    def head_score(self, pooled: np.ndarray) -> float:
        return float(self.head_sigmoid.forward(self.head.forward(pooled))[0])

    def head_backward(self, dscore: float) -> np.ndarray:
        grad = self.head_sigmoid.backward(np.asarray([dscore]))
        return self.head.backward(grad)

    def attention_weights(self, seq: np.ndarray) -> np.ndarray:
        seq = self.prepare(seq)
        if seq.shape[0] == 0:
            raise EmptySequence("encoder requires at least one step")
        h = seq
        for layer in self.lstm_layers:
            h = layer.forward(h)
        return self.attention.attention_weights(h)

    # -- checkpointing ----------------------------------------------------

    def state_arrays(self) -> dict[str, np.ndarray]:
        return {name: p.value for name, p in self.parameters()}

    def load_state(self, arrays: dict[str, np.ndarray]) -> None:
        for name, p in self.parameters():
            p.value[...] = arrays[name]


def encoder_forward(encoder: SequenceEncoder, seq: np.ndarray):
    """Spec surface: per-step outputs plus the pooled embedding."""
    return encoder.forward(seq)
