"""Command line driver: synth | extract | train | detect | eval | robustness | serve.

Exit codes: 0 success, 2 validation/config error, 1 anything else.
"""

from __future__ import annotations

import json
import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path

import click

from .errors import ConfigError, ConsistencyError, HawkError, InfeasibleConstraint, InsufficientData, SchemaError
from .exspc import ExSpcConfig
from .features.config import FeatureConfig
from .features.streams import extract_streams, schema_dict
from .features.structured import feature_vector
from .metrics import auc_roc, confusion_from_predictions, metrics
from .mvin import ObjectiveSpec
from .pipeline import HawkBundle, PipelineConfig, build_samples, train_from_pairs
from .replay.model import CheatProfile
from .replay.store import read_dataset, write_dataset
from .replay.synth import generate_synthetic_match
from .reports import ban_cycle_csv, ban_cycle_report, robustness_sweep, sweep_csv
from .revpov import RevPovConfig
from .revstats import RevStatsConfig

_VALIDATION_ERRORS = (ConfigError, SchemaError, ConsistencyError, InfeasibleConstraint, InsufficientData)


def _pipeline_config(config_path: str | None, seed: int) -> PipelineConfig:
    cfg = PipelineConfig(seed=seed)
    if config_path:
        raw = json.loads(Path(config_path).read_text())
        if "feature" in raw:
            cfg.feature = FeatureConfig(**raw["feature"])
        if "revpov" in raw:
            cfg.revpov = RevPovConfig(**raw["revpov"])
        if "revstats" in raw:
            cfg.revstats = RevStatsConfig(kinds=tuple(raw["revstats"].get("kinds", RevStatsConfig().kinds)),
                                          n_subsamples=raw["revstats"].get("n_subsamples", 9))
        if "exspc" in raw:
            cfg.exspc = ExSpcConfig(**raw["exspc"])
        if "objective" in raw:
            cfg.objective = ObjectiveSpec(kind=raw["objective"].get("kind", "accuracy-subject-to-recall"),
                                          r=raw["objective"].get("r"))
        if "ratios" in raw:
            cfg.ratios = tuple(raw["ratios"])
        if "seed" in raw and seed == 0:
            cfg.seed = int(raw["seed"])
    return cfg


def _parse_cheaters(spec: str) -> list[tuple[str, int]]:
    out = []
    if not spec:
        return out
    for part in spec.split(","):
        kind, _, count = part.partition(":")
        kind = kind.strip()
        if kind not in ("aimbot", "wallhack", "boosting-like"):
            raise ConfigError(f"unknown cheat kind {kind!r}")
        out.append((kind, int(count or 1)))
    return out


@click.group()
def main():
    """Server-side FPS anti-cheat pipeline."""


@main.command()
@click.option("--players", default=10, show_default=True)
@click.option("--matches", default=40, show_default=True)
@click.option("--rounds", default=5, show_default=True)
@click.option("--cheaters", default="aimbot:1", show_default=True,
              help="per-match cheater mix, e.g. aimbot:1,wallhack:1")
@click.option("--sophistication", default=0.0, show_default=True)
@click.option("--seed", default=1, show_default=True)
@click.option("--frame-stride", default=16, show_default=True)
@click.option("--out", required=True, type=click.Path())
def synth(players, matches, rounds, cheaters, sophistication, seed, frame_stride, out):
    """Generate a labeled synthetic corpus (matches/ + labels/)."""
    mix = _parse_cheaters(cheaters)
    n_cheaters = sum(c for _, c in mix)
    if n_cheaters > players:
        raise ConfigError("more cheaters than players")
    pairs = []
    base_date = datetime(2025, 1, 1, tzinfo=timezone.utc)
    for mi in range(matches):
        profiles = []
        for kind, count in mix:
            profiles += [CheatProfile(kind=kind, sophistication=sophistication)] * count
        profiles += [CheatProfile()] * (players - n_cheaters)
        date = (base_date + timedelta(hours=6 * mi)).strftime("%Y-%m-%dT%H:%M:%SZ")
        pairs.append(
            generate_synthetic_match(
                profiles, rounds, seed * 100000 + mi,
                match_id=f"synth-{seed}-{mi:04d}", date_utc=date,
                frame_stride=frame_stride, ban_lag_days=3.0,
            )
        )
    write_dataset(out, pairs)
    click.echo(f"wrote {matches} matches to {out}")


@main.command()
@click.option("--in", "in_dir", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--seed", default=0, show_default=True)
def extract(in_dir, out, config_path, seed):
    """Per-match feature JSON: v28 + mask + the seven streams per player."""
    cfg = _pipeline_config(config_path, seed)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    root = Path(in_dir)
    match_dir = root / "matches" if (root / "matches").is_dir() else root
    count = 0
    from .replay.parse import parse_match_json

    for path in sorted(match_dir.glob("*.json")):
        match = parse_match_json(path.read_bytes())
        players = []
        for ref in match.players:
            streams = extract_streams(match, ref.steam_id, cfg.feature)
            fv = feature_vector(match, ref.steam_id, cfg.feature)
            players.append({
                "steamId": ref.steam_id,
                "v28": fv.values.tolist(),
                "mask": [bool(b) for b in fv.mask],
                "streams": {name: arr.tolist() for name, arr in streams.streams.items()},
            })
        payload = {"matchId": match.match_id, "schema": schema_dict()["version"], "players": players}
        (out_dir / f"{match.match_id}.json").write_text(json.dumps(payload))
        count += 1
    click.echo(f"extracted features for {count} matches to {out}")


@main.command()
@click.option("--data", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--seed", default=0, show_default=True)
@click.option("--by-date", is_flag=True, default=False)
def train(data, out, config_path, seed, by_date):
    """Train all subsystems plus the fusion model; write the bundle."""
    cfg = _pipeline_config(config_path, seed)
    pairs = read_dataset(data)
    bundle, samples = train_from_pairs(pairs, cfg, by_date=by_date)
    bundle.save(out)
    ev = bundle.evaluate(samples["validation"]) if samples["validation"] else {}
    click.echo(json.dumps({"modelDir": str(out), "validation": ev}, indent=2, sort_keys=True))


@main.command()
@click.option("--models", required=True, type=click.Path(exists=True))
@click.option("--data", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--seed", default=0, show_default=True)
def detect(models, data, out, config_path, seed):
    """Run detection over every match in the dataset; one report per match."""
    bundle = HawkBundle.load(models)
    pairs = read_dataset(data)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for match, _ in pairs:
        samples = build_samples([(match, None)], bundle.feature_config)
        players = []
        for sample in samples:
            d = bundle.decide(sample)
            players.append({
                "steamId": sample.steam_id,
                "dPov": d["d_pov"], "dStats": d["d_stats"], "dSpc": d["d_spc"],
                "sPov": d["s_pov"], "sStats": d["s_stats"], "sSpc": d["s_spc"],
                "w": d["w"], "dHawk": d["d_hawk"],
            })
        report = {
            "matchId": match.match_id,
            "modelVersion": bundle.version,
            "epsilon": bundle.mvin.epsilon,
            "lambda": bundle.mvin.lam.tolist(),
            "players": players,
        }
        (out_dir / f"{match.match_id}.json").write_text(json.dumps(report, indent=2))
    click.echo(f"wrote {len(pairs)} reports to {out}")


@main.command("eval")
@click.option("--pred", required=True, type=click.Path(exists=True),
              help="directory of detect reports")
@click.option("--labels", "labels_dir", required=True, type=click.Path(exists=True),
              help="dataset root or labels directory")
@click.option("--out", required=True, type=click.Path())
def eval_cmd(pred, labels_dir, out):
    """Score detect reports against ground-truth labels."""
    from .replay.parse import parse_labels_json

    root = Path(labels_dir)
    lab_dir = root / "labels" if (root / "labels").is_dir() else root
    truth = {}
    for path in sorted(lab_dir.glob("*.json")):
        labels = parse_labels_json(path.read_bytes())
        for lab in labels.labels:
            truth[(labels.match_id, lab.steam_id)] = int(lab.cheater)

    y_true, y_pred, scores = [], [], []
    for path in sorted(Path(pred).glob("*.json")):
        report = json.loads(path.read_text())
        for player in report["players"]:
            key = (report["matchId"], player["steamId"])
            if key not in truth:
                continue
            y_true.append(truth[key])
            y_pred.append(player["dHawk"])
            scores.append(player["w"])
    c = confusion_from_predictions(y_true, y_pred)
    result = metrics(c)
    try:
        result["auc"] = auc_roc(scores, y_true)
    except HawkError:
        result["auc"] = None
    result["confusion"] = {"tp": c.tp, "tn": c.tn, "fp": c.fp, "fn": c.fn}
    Path(out).write_text(json.dumps(result, indent=2, sort_keys=True))
    click.echo(json.dumps(result, indent=2, sort_keys=True))


@main.command()
@click.option("--data", required=True, type=click.Path(exists=True))
@click.option("--partition-size", default=40, show_default=True)
@click.option("--out", required=True, type=click.Path())
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--seed", default=0, show_default=True)
def robustness(data, partition_size, out, config_path, seed):
    """Date-partitioned growing-prefix training sweep (CSV)."""
    cfg = _pipeline_config(config_path, seed)
    pairs = read_dataset(data)
    from .replay.split import split_dataset

    splits = split_dataset(pairs, cfg.ratios, by_date=True)
    val = build_samples(splits["validation"], cfg.feature)
    test = build_samples(splits["test"], cfg.feature)
    sweep = robustness_sweep(splits["train"], val, test, cfg, partition_size)
    Path(out).write_text(sweep_csv(sweep))
    click.echo(sweep_csv(sweep))


@main.command("ban-report")
@click.option("--detections", required=True, type=click.Path(exists=True),
              help="JSON list of {steamId, timestamp}")
@click.option("--labels", "labels_dir", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def ban_report(detections, labels_dir, out):
    """Daily and cumulative ban counts, engine vs official."""
    from .replay.parse import parse_labels_json

    dets = json.loads(Path(detections).read_text())
    root = Path(labels_dir)
    lab_dir = root / "labels" if (root / "labels").is_dir() else root
    bans = []
    for path in sorted(lab_dir.glob("*.json")):
        for lab in parse_labels_json(path.read_bytes()).labels:
            if lab.ban_date_utc:
                bans.append({"steamId": lab.steam_id, "banDateUtc": lab.ban_date_utc})
    report = ban_cycle_report(dets, bans)
    Path(out).write_text(json.dumps(report, indent=2))
    Path(out).with_suffix(".csv").write_text(ban_cycle_csv(report))
    click.echo(f"{len(report['rows'])} rows")


@main.command()
@click.option("--models", default=None, type=click.Path(exists=True))
@click.option("--data", default=None, type=click.Path(),
              help="state directory (default $HAWK_DATA_DIR or ./hawk-data)")
@click.option("--bind", default=None, help="host:port (default $HAWK_BIND or 127.0.0.1:8080)")
def serve(models, data, bind):
    """Run the detection/review HTTP service."""
    import os

    from .service import serve as run_serve

    data_dir = data or os.environ.get("HAWK_DATA_DIR", "hawk-data")
    bind_addr = bind or os.environ.get("HAWK_BIND", "127.0.0.1:8080")
    run_serve(data_dir, models, bind_addr)


def entry() -> int:
    try:
        main.main(standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 2
    except click.Abort:
        return 1
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HawkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(entry())
