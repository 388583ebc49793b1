"""Sense-performance consistency subsystem.

Consumes the frozen RevPov encoders' per-step outputs (padded to the dataset
maximum length, flattened, shrunk by a dense+ELU head per stream) and the
sense/performance split of the 28 structured features (z-scored with the
statistics shared with the committee). Four reduction stacks, two deepening
stacks and a sigmoid head produce the consistency verdict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import MissingEmbedding, UntrainedModel
from .features.grouping import STRUCTURED_PERF_IDX, STRUCTURED_SENSE_IDX
from .learn.checkpoint import load_container, save_container
from .learn.layers import Dense, ELU, Sigmoid
from .learn.net import train_binary
from .revpov import EMBED_ORDER

POV_SENSE_ORDER = ("movement", "economy", "offensiveProps", "auxiliaryProps")
POV_PERF_ORDER = ("weaponFire", "elimination", "damage")

GROUPING_VERSION = 1


@dataclass
class ExSpcConfig:
    step_dim: int = 16  # E of the revpov encoders
    shrink_dim: int = 32
    reduce_hidden: int = 64
    reduce_out: int = 32
    deepen_hidden: int = 32
    deepen_out: int = 16
    head_hidden: int = 16
    epochs: int = 10
    lr: float = 1e-3
    pos_weight: float = 9.0
    padding_mode: str = "masked"  # zeroes padded steps; "literal" flattens as-is
    seed: int = 0
    pad_lengths: dict = field(default_factory=dict)


@dataclass
class ExSpcInputs:
    pov: dict[str, np.ndarray]  # stream -> flattened padded step outputs
    v28_sense: np.ndarray
    v28_perf: np.ndarray


def assemble_inputs(
    step_outputs: dict[str, np.ndarray],
    v28: np.ndarray,
    norm,
    pad_lengths: dict[str, int],
    padding_mode: str = "masked",
) -> ExSpcInputs:
    """Zero-pad per-stream step outputs to the dataset maxima and flatten;
    split the normalized feature vector by the sense/performance grouping."""
    pov = {}
    for name in EMBED_ORDER:
        if name not in step_outputs:
            raise MissingEmbedding(f"missing step outputs for stream {name}")
        steps = np.asarray(step_outputs[name], dtype=np.float64)
        pad_len = pad_lengths[name]
        out = np.zeros((pad_len, steps.shape[1] if steps.ndim == 2 else 0))
        if steps.shape[0] > 0:
            keep = min(steps.shape[0], pad_len)
            out[:keep] = steps[:keep]
        if padding_mode == "masked" and steps.shape[0] < pad_len:
            out[steps.shape[0] :] = 0.0  # explicit mask of absent steps
        pov[name] = out.reshape(-1)
    z = norm.apply(v28)
    return ExSpcInputs(
        pov=pov,
        v28_sense=z[list(STRUCTURED_SENSE_IDX)],
        v28_perf=z[list(STRUCTURED_PERF_IDX)],
    )


class _Stack:
    """Dense+ELU chain over a 1-D vector."""

    def __init__(self, rng, dims: list[int]):
        self.layers = []
        for dim_in, dim_out in zip(dims, dims[1:]):
            self.layers.append(Dense(rng, dim_in, dim_out))
            self.layers.append(ELU())

    def parameters(self, prefix: str):
        out = []
        for i, layer in enumerate(self.layers):
            out += [(f"{prefix}.{i}.{n}", p) for n, p in layer.parameters()]
        return out

    def forward(self, x):
        for layer in self.layers:
            x = layer.forward(x)
        return x

    def backward(self, grad):
        for layer in reversed(self.layers):
            grad = layer.backward(grad)
        return grad


class ExSpcModel:
    def __init__(self, config: ExSpcConfig):
        self.config = config
        rng = np.random.Generator(np.random.PCG64(config.seed))
        c = config
        self.shrink = {
            name: _Stack(rng, [config.pad_lengths[name] * c.step_dim, c.shrink_dim])
            for name in EMBED_ORDER
        }
        self.reduce_pov_sense = _Stack(rng, [len(POV_SENSE_ORDER) * c.shrink_dim, c.reduce_hidden, c.reduce_out])
        self.reduce_pov_perf = _Stack(rng, [len(POV_PERF_ORDER) * c.shrink_dim, c.reduce_hidden, c.reduce_out])
        self.reduce_stats_sense = _Stack(rng, [len(STRUCTURED_SENSE_IDX), c.reduce_hidden, c.reduce_out])
        self.reduce_stats_perf = _Stack(rng, [len(STRUCTURED_PERF_IDX), c.reduce_hidden, c.reduce_out])
        self.deepen_sense = _Stack(rng, [2 * c.reduce_out, c.deepen_hidden, c.deepen_out])
        self.deepen_perf = _Stack(rng, [2 * c.reduce_out, c.deepen_hidden, c.deepen_out])
        self.head_reduce = _Stack(rng, [2 * c.deepen_out, c.head_hidden])
        self.head_out = Dense(rng, c.head_hidden, 1)
        self.head_sigmoid = Sigmoid()
        self.norm = None  # shared feature normalization, set at train time
        self.loss_history: list[float] = []
        self.version = "untrained"
        self.trained = False

    def parameters(self):
        out = []
        for name in EMBED_ORDER:
            out += self.shrink[name].parameters(f"shrink.{name}")
        out += self.reduce_pov_sense.parameters("reduce.pov.sense")
        out += self.reduce_pov_perf.parameters("reduce.pov.perf")
        out += self.reduce_stats_sense.parameters("reduce.stats.sense")
        out += self.reduce_stats_perf.parameters("reduce.stats.perf")
        out += self.deepen_sense.parameters("deepen.sense")
        out += self.deepen_perf.parameters("deepen.perf")
        out += self.head_reduce.parameters("head.reduce")
        out += [(f"head.out.{n}", p) for n, p in self.head_out.parameters()]
        return out

    def forward(self, inputs: ExSpcInputs) -> float:
        c = self.config
        phi = {name: self.shrink[name].forward(inputs.pov[name]) for name in EMBED_ORDER}
        pov_sense = np.concatenate([phi[n] for n in POV_SENSE_ORDER])
        pov_perf = np.concatenate([phi[n] for n in POV_PERF_ORDER])
        xi_pov_sense = self.reduce_pov_sense.forward(pov_sense)
        xi_pov_perf = self.reduce_pov_perf.forward(pov_perf)
        xi_stats_sense = self.reduce_stats_sense.forward(inputs.v28_sense)
        xi_stats_perf = self.reduce_stats_perf.forward(inputs.v28_perf)
        v_sense = np.concatenate([xi_stats_sense, xi_pov_sense])
        v_perf = np.concatenate([xi_stats_perf, xi_pov_perf])
        deep_sense = self.deepen_sense.forward(v_sense)
        deep_perf = self.deepen_perf.forward(v_perf)
        joint = self.head_reduce.forward(np.concatenate([deep_sense, deep_perf]))
        self._dims = (c.reduce_out, c.deepen_out)
        return float(self.head_sigmoid.forward(self.head_out.forward(joint))[0])

    def backward(self, dscore: float) -> None:
        reduce_out, deepen_out = self._dims
        grad = self.head_sigmoid.backward(np.asarray([dscore]))
        grad = self.head_out.backward(grad)
        grad = self.head_reduce.backward(grad)
        d_sense = self.deepen_sense.backward(grad[:deepen_out])
        d_perf = self.deepen_perf.backward(grad[deepen_out:])
        d_xi_stats_sense, d_xi_pov_sense = d_sense[:reduce_out], d_sense[reduce_out:]
        d_xi_stats_perf, d_xi_pov_perf = d_perf[:reduce_out], d_perf[reduce_out:]
        self.reduce_stats_sense.backward(d_xi_stats_sense)
        self.reduce_stats_perf.backward(d_xi_stats_perf)
        d_pov_sense = self.reduce_pov_sense.backward(d_xi_pov_sense)
        d_pov_perf = self.reduce_pov_perf.backward(d_xi_pov_perf)
        s = self.config.shrink_dim
        for gi, name in enumerate(POV_SENSE_ORDER):
            self.shrink[name].backward(d_pov_sense[gi * s : (gi + 1) * s])
        for gi, name in enumerate(POV_PERF_ORDER):
            self.shrink[name].backward(d_pov_perf[gi * s : (gi + 1) * s])

    def decide(self, inputs: ExSpcInputs) -> tuple[int, float]:
        """Sigmoid score; the 0.5 boundary is inclusive (score 0.5 -> flag)."""
        if not self.trained:
            raise UntrainedModel("exspc model is not trained")
        score = self.forward(inputs)
        return (1 if score >= 0.5 else 0), score

    # -- persistence -------------------------------------------------------

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        arrays = {name: p.value for name, p in self.parameters()}
        arrays["__norm_mean__"] = self.norm.mean
        arrays["__norm_std__"] = self.norm.std
        cfg = self.config.__dict__.copy()
        save_container(directory / "model.bin", "exspc", cfg, arrays)
        manifest = {
            "version": self.version,
            "groupingVersion": GROUPING_VERSION,
            "padLengths": self.config.pad_lengths,
            "lossHistory": self.loss_history,
        }
        (directory / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))

    @classmethod
    def load(cls, directory: str | Path) -> "ExSpcModel":
        from .revstats import Normalization

        directory = Path(directory)
        manifest = json.loads((directory / "manifest.json").read_text())
        _, cfg, arrays = load_container(directory / "model.bin")
        cfg["pad_lengths"] = {k: int(v) for k, v in cfg["pad_lengths"].items()}
        model = cls(ExSpcConfig(**cfg))
        mean = arrays.pop("__norm_mean__")
        std = arrays.pop("__norm_std__")
        model.norm = Normalization(mean=mean, std=std)
        for name, p in model.parameters():
            p.value[...] = arrays[name]
        model.version = manifest["version"]
        model.loss_history = list(manifest["lossHistory"])
        model.trained = True
        return model


def fit_pad_lengths(all_step_outputs: list[dict[str, np.ndarray]]) -> dict[str, int]:
    """Dataset-wide maximum step count per stream (minimum 1)."""
    lengths = {name: 1 for name in EMBED_ORDER}
    for outputs in all_step_outputs:
        for name in EMBED_ORDER:
            lengths[name] = max(lengths[name], int(np.asarray(outputs[name]).shape[0]))
    return lengths


def train_exspc(
    inputs: list[ExSpcInputs], labels: np.ndarray, config: ExSpcConfig, norm
) -> ExSpcModel:
    """Weighted-BCE training over pre-assembled inputs; loss history kept."""
    model = ExSpcModel(config)
    model.norm = norm
    model.loss_history = train_binary(
        model,
        lambda sample, rng: model.forward(sample),
        model.backward,
        inputs,
        np.asarray(labels, dtype=np.float64),
        epochs=config.epochs,
        lr=config.lr,
        pos_weight=config.pos_weight,
        seed=config.seed,
    )
    model.trained = True
    model.version = f"exspc-seed{config.seed}"
    return model
