"""Measurement harnesses: robustness-over-time sweep and ban-cycle report."""

from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone

from .errors import InsufficientData
from .pipeline import PipelineConfig, PlayerSample, build_samples, train_bundle

SWEEP_METRIC_COLUMNS = ("accuracy", "recall", "npv", "auc", "oei")


def _fmt(value) -> str:
    return "N/A" if value is None else f"{value:.6f}"


def robustness_sweep(
    dated_pairs: list,
    val_samples: list[PlayerSample],
    test_samples: list[PlayerSample],
    config: PipelineConfig,
    partition_size: int = 40,
) -> dict:
    """Date-ordered partitions; train on growing prefixes, evaluate each
    prefix's bundle on the fixed validation and test sets."""
    pairs = sorted(dated_pairs, key=lambda p: (p[0].date_utc, p[0].match_id))
    n_partitions = len(pairs) // partition_size
    if n_partitions < 2:
        raise InsufficientData(
            f"{len(pairs)} matches yield {n_partitions} partitions of {partition_size}; need >= 2"
        )
    # features are extracted once; prefixes slice the per-match sample groups
    samples_by_match = [build_samples([pair], config.feature) for pair in pairs]
    rows = []
    for k in range(1, n_partitions + 1):
        prefix_samples = [
            s for group in samples_by_match[: k * partition_size] for s in group
        ]
        bundle = train_bundle(prefix_samples, val_samples, config)
        row = {"partitions": k, "trainMatches": k * partition_size}
        for split_name, samples in (("validation", val_samples), ("test", test_samples)):
            ev = bundle.evaluate(samples)["hawk"]
            for metric in SWEEP_METRIC_COLUMNS:
                row[f"{split_name}.{metric}"] = ev[metric]
        rows.append(row)
    return {"partitionSize": partition_size, "rows": rows}


def sweep_csv(sweep: dict) -> str:
    buf = io.StringIO()
    columns = ["partitions", "trainMatches"] + [
        f"{split}.{metric}" for split in ("validation", "test") for metric in SWEEP_METRIC_COLUMNS
    ]
    writer = csv.writer(buf)
    writer.writerow(columns)
    for row in sweep["rows"]:
        writer.writerow([row["partitions"], row["trainMatches"]] + [
            _fmt(row[c]) if not isinstance(row[c], int) else row[c] for c in columns[2:]
        ])
    return buf.getvalue()


def _utc_day(timestamp: str) -> str:
    dt = datetime.fromisoformat(timestamp.replace("Z", "+00:00"))
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%d")


def ban_cycle_report(detections: list[dict], official_bans: list[dict]) -> dict:
    """Daily and cumulative ban counts per source ('engine' vs 'official').

    ``detections`` carry engine flag timestamps; ``official_bans`` the
    banDateUtc labels. Days are bucketed in UTC.
    """
    daily: dict[tuple[str, str], int] = {}
    for det in detections:
        day = _utc_day(det["timestamp"])
        daily[(day, "engine")] = daily.get((day, "engine"), 0) + 1
    for ban in official_bans:
        if ban.get("banDateUtc"):
            day = _utc_day(ban["banDateUtc"])
            daily[(day, "official")] = daily.get((day, "official"), 0) + 1

    rows = []
    cumulative = {"engine": 0, "official": 0}
    for day, source in sorted(daily):
        count = daily[(day, source)]
        cumulative[source] += count
        rows.append({"date": day, "source": source, "daily": count, "cumulative": cumulative[source]})
    return {"rows": rows}


def ban_cycle_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["date", "source", "daily", "cumulative"])
    for row in report["rows"]:
        writer.writerow([row["date"], row["source"], row["daily"], row["cumulative"]])
    return buf.getvalue()


def evaluation_report(evaluation: dict) -> str:
    """Stable JSON form of HawkBundle.evaluate output."""
    return json.dumps(evaluation, indent=2, sort_keys=True)
