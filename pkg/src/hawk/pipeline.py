"""End-to-end orchestration: corpus -> samples -> trained bundle -> verdicts.

A HawkBundle holds the three trained subsystems plus the fusion model, the
shared feature normalization, the train-split Mann-Whitney ranking and the
cached validation triples (so the threshold optimizer can be re-run without
touching the subsystems).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DegenerateClass
from .exspc import ExSpcConfig, ExSpcInputs, ExSpcModel, assemble_inputs, fit_pad_lengths, train_exspc
from .features.config import DEFAULT_CONFIG, FeatureConfig
from .features.ranking import rank_features_mannwhitney
from .features.streams import extract_streams
from .features.structured import FEATURE_NAMES, feature_vector
from .metrics import auc_roc, confusion_from_predictions, metrics
from .mvin import MvinModel, ObjectiveSpec, decide_hawk, fuse, optimize
from .replay.model import LabelSet, MatchRecord
from .replay.split import split_dataset
from .revpov import RevPovConfig, RevPovModel, train_revpov
from .revstats import Committee, RevStatsConfig, train_revstats


@dataclass
class PlayerSample:
    match_id: str
    steam_id: str
    date_utc: str
    label: int
    cheat_type: str
    streams: dict[str, np.ndarray]
    v28: np.ndarray
    mask: np.ndarray


@dataclass
class PipelineConfig:
    feature: FeatureConfig = DEFAULT_CONFIG
    revpov: RevPovConfig = field(default_factory=RevPovConfig)
    revstats: RevStatsConfig = field(default_factory=RevStatsConfig)
    exspc: ExSpcConfig = field(default_factory=ExSpcConfig)
    objective: ObjectiveSpec = field(default_factory=ObjectiveSpec)
    ratios: tuple[float, float, float] = (0.6, 0.2, 0.2)
    seed: int = 0

    def reseed(self) -> None:
        self.revpov.seed = self.seed
        self.revstats.seed = self.seed
        self.exspc.seed = self.seed


def build_samples(
    pairs: list[tuple[MatchRecord, LabelSet | None]],
    config: FeatureConfig = DEFAULT_CONFIG,
) -> list[PlayerSample]:
    """One sample per (match, player); unlabeled players default to honest."""
    samples = []
    for match, labels in pairs:
        for player in match.players:
            label = 0
            cheat_type = "none"
            if labels is not None:
                try:
                    lab = labels.for_player(player.steam_id)
                    label = int(lab.cheater)
                    cheat_type = lab.cheat_type
                except KeyError:
                    pass
            streams = extract_streams(match, player.steam_id, config)
            fv = feature_vector(match, player.steam_id, config)
            samples.append(
                PlayerSample(
                    match_id=match.match_id,
                    steam_id=player.steam_id,
                    date_utc=match.date_utc,
                    label=label,
                    cheat_type=cheat_type,
                    streams=streams.streams,
                    v28=fv.values,
                    mask=fv.mask,
                )
            )
    return samples


class HawkBundle:
    def __init__(
        self,
        revpov: RevPovModel,
        committee: Committee,
        exspc: ExSpcModel,
        mvin: MvinModel,
        feature_config: FeatureConfig,
        ranking: list,
        validation_triples: np.ndarray,
        validation_labels: np.ndarray,
        version: str,
    ):
        self.revpov = revpov
        self.committee = committee
        self.exspc = exspc
        self.mvin = mvin
        self.feature_config = feature_config
        self.ranking = ranking
        self.validation_triples = validation_triples
        self.validation_labels = validation_labels
        self.version = version
        self._step_cache: dict[tuple[str, str, str], dict[str, np.ndarray]] = {}

    # -- inference ----------------------------------------------------------

    def _step_outputs(self, sample: PlayerSample) -> dict[str, np.ndarray]:
        key = (sample.match_id, sample.steam_id, self.revpov.version)
        if key not in self._step_cache:
            self._step_cache[key] = self.revpov.step_outputs(sample.streams)
        return self._step_cache[key]

    def exspc_inputs(self, sample: PlayerSample) -> ExSpcInputs:
        return assemble_inputs(
            self._step_outputs(sample),
            sample.v28,
            self.committee.norm,
            self.exspc.config.pad_lengths,
            self.exspc.config.padding_mode,
        )

    def subsystem_decisions(self, sample: PlayerSample) -> dict:
        d_pov, s_pov = self.revpov.decide(self.revpov.forest_input(sample.streams))
        d_stats, s_stats = self.committee.decide(sample.v28, sample.mask)
        d_spc, s_spc = self.exspc.decide(self.exspc_inputs(sample))
        return {
            "d_pov": d_pov,
            "s_pov": s_pov,
            "d_stats": d_stats,
            "s_stats": s_stats,
            "d_spc": d_spc,
            "s_spc": s_spc,
        }

    def decide(self, sample: PlayerSample) -> dict:
        d = self.subsystem_decisions(sample)
        w = fuse(self.mvin.lam, d["d_pov"], d["d_stats"], d["d_spc"])
        d["w"] = w
        d["epsilon"] = self.mvin.epsilon
        d["d_hawk"] = decide_hawk(w, self.mvin.epsilon)
        return d

    def feature_zscores(self, sample: PlayerSample) -> list[dict]:
        """Structured features by |z| against the train normalization."""
        z = self.committee.norm.apply(sample.v28)
        rows = [
            {
                "name": name,
                "value": float(sample.v28[i]),
                "z": float(z[i]),
                "missing": bool(sample.mask[i]),
            }
            for i, name in enumerate(FEATURE_NAMES)
        ]
        rows.sort(key=lambda r: (r["missing"], -abs(r["z"])))
        return rows

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, samples: list[PlayerSample]) -> dict:
        labels = np.asarray([s.label for s in samples], dtype=bool)
        decisions = [self.decide(s) for s in samples]
        out = {}
        for system, dkey, skey in (
            ("revpov", "d_pov", "s_pov"),
            ("revstats", "d_stats", "s_stats"),
            ("exspc", "d_spc", "s_spc"),
            ("hawk", "d_hawk", "w"),
        ):
            pred = np.asarray([d[dkey] for d in decisions], dtype=bool)
            scores = np.asarray([d[skey] for d in decisions], dtype=np.float64)
            c = confusion_from_predictions(labels, pred)
            m = metrics(c)
            try:
                m["auc"] = auc_roc(scores, labels)
            except DegenerateClass:
                m["auc"] = None
            m["confusion"] = {"tp": c.tp, "tn": c.tn, "fp": c.fp, "fn": c.fn}
            out[system] = m
        return out

    # -- persistence ----------------------------------------------------------

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        self.revpov.save(directory / "revpov")
        self.committee.save(directory / "revstats")
        self.exspc.save(directory / "exspc")
        (directory / "mvin.json").write_text(json.dumps(self.mvin.to_dict(), indent=2))
        manifest = {
            "version": self.version,
            "featureConfig": self.feature_config.__dict__,
            "ranking": [[name, None if u != u else u, p] for name, u, p in self.ranking],
            "validationTriples": np.asarray(self.validation_triples).tolist(),
            "validationLabels": np.asarray(self.validation_labels, dtype=int).tolist(),
        }
        (directory / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))

    @classmethod
    def load(cls, directory: str | Path) -> "HawkBundle":
        directory = Path(directory)
        manifest = json.loads((directory / "manifest.json").read_text())
        ranking = [
            (name, float("nan") if u is None else u, p) for name, u, p in manifest["ranking"]
        ]
        return cls(
            revpov=RevPovModel.load(directory / "revpov"),
            committee=Committee.load(directory / "revstats"),
            exspc=ExSpcModel.load(directory / "exspc"),
            mvin=MvinModel.from_dict(json.loads((directory / "mvin.json").read_text())),
            feature_config=FeatureConfig(**manifest["featureConfig"]),
            ranking=ranking,
            validation_triples=np.asarray(manifest["validationTriples"], dtype=np.float64),
            validation_labels=np.asarray(manifest["validationLabels"], dtype=np.int64),
            version=manifest["version"],
        )

    def reoptimize(self, objective: ObjectiveSpec) -> tuple[MvinModel, MvinModel]:
        """Re-run the threshold optimizer on the cached validation triples."""
        old = self.mvin
        new = optimize(self.validation_triples, self.validation_labels, objective)
        self.mvin = new
        return old, new


def train_bundle(
    train_samples: list[PlayerSample],
    val_samples: list[PlayerSample],
    config: PipelineConfig,
) -> HawkBundle:
    config.reseed()
    train_labels = np.asarray([s.label for s in train_samples], dtype=np.int64)
    val_labels = np.asarray([s.label for s in val_samples], dtype=np.int64)

    revpov = train_revpov(train_samples, train_labels, config.revpov)

    v28 = np.stack([s.v28 for s in train_samples])
    masks = np.stack([s.mask for s in train_samples])
    committee = train_revstats(v28, masks, train_labels, config.revstats)

    step_outputs = [revpov.step_outputs(s.streams) for s in train_samples]
    config.exspc.pad_lengths = fit_pad_lengths(step_outputs)
    config.exspc.step_dim = config.revpov.out_dim
    exspc_inputs = [
        assemble_inputs(
            so, s.v28, committee.norm, config.exspc.pad_lengths, config.exspc.padding_mode
        )
        for so, s in zip(step_outputs, train_samples)
    ]
    exspc = train_exspc(exspc_inputs, train_labels, config.exspc, committee.norm)

    ranking = rank_features_mannwhitney(v28, masks, train_labels)

    bundle = HawkBundle(
        revpov=revpov,
        committee=committee,
        exspc=exspc,
        mvin=MvinModel(lam=np.asarray([1 / 3, 1 / 3, 1 / 3]), epsilon=0.5, objective=config.objective),
        feature_config=config.feature,
        ranking=ranking,
        validation_triples=np.zeros((0, 3)),
        validation_labels=np.zeros(0, dtype=np.int64),
        version=f"hawk-seed{config.seed}",
    )

    triples = np.asarray(
        [
            [d["d_pov"], d["d_stats"], d["d_spc"]]
            for d in (bundle.subsystem_decisions(s) for s in val_samples)
        ],
        dtype=np.float64,
    ).reshape(-1, 3)
    bundle.validation_triples = triples
    bundle.validation_labels = val_labels
    bundle.mvin = optimize(triples, val_labels, config.objective)
    return bundle


def train_from_pairs(
    pairs: list[tuple[MatchRecord, LabelSet | None]],
    config: PipelineConfig,
    *,
    by_date: bool = False,
) -> tuple[HawkBundle, dict]:
    """Split the corpus, train, and return (bundle, split of samples)."""
    splits = split_dataset(pairs, config.ratios, by_date=by_date, seed=config.seed)
    sample_splits = {
        name: build_samples(items, config.feature) for name, items in splits.items()
    }
    bundle = train_bundle(sample_splits["train"], sample_splits["validation"], config)
    return bundle, sample_splits
