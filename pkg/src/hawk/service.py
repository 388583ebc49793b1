"""HTTP service: detection reports, the GM review queue, verdicts, and the
re-tunable threshold optimizer.

Persistence is file-based and append-only: reports.jsonl and ledger.jsonl in
the data directory, plus a corpus/ directory that receives one labeled match
per confirmed verdict. Replaying the two logs reconstructs the full state,
so a restart is byte-identical. All writes go through one lock; detection
runs against an immutable bundle reference that the optimizer swap replaces
atomically.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path

from fastapi import Depends, FastAPI, Header, HTTPException, Request

from .errors import ConsistencyError, InfeasibleConstraint, SchemaError
from .mvin import ObjectiveSpec, decide_hawk, fuse
from .pipeline import HawkBundle, build_samples
from .replay.parse import parse_match_json, serialize_labels, serialize_match
from .replay.model import LabelSet, PlayerLabel

TIMELINE_LIMIT = 500


def _now_utc() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _timeline(match, steam_id: str) -> list[dict]:
    """Per-round behavior bands: fire/engage/guard/prop/vulnerable/kill rows."""
    rows = []
    guarding = False
    for fr in match.frames:
        me = next((p for p in fr.players if p.steam_id == steam_id), None)
        if me is None:
            continue
        if me.is_scoped and not guarding:
            rows.append({"tick": fr.tick, "roundNum": fr.round_num, "kind": "guard",
                         "detail": "on guard"})
        guarding = me.is_scoped
    for d in match.damages:
        if d.attacker_steam_id == steam_id:
            rows.append({"tick": d.tick, "roundNum": d.round_num, "kind": "engage",
                         "detail": f"damage {d.hp_damage} on {d.victim_steam_id}"})
        if d.victim_steam_id == steam_id:
            rows.append({"tick": d.tick, "roundNum": d.round_num, "kind": "vulnerable",
                         "detail": f"took {d.hp_damage_taken} from {d.attacker_steam_id}"})
    for w in match.weapon_fires:
        if w.player_steam_id == steam_id:
            rows.append({"tick": w.tick, "roundNum": w.round_num, "kind": "fire",
                         "detail": w.weapon})
    for k in match.kills:
        if k.attacker_steam_id == steam_id:
            rows.append({"tick": k.tick, "roundNum": k.round_num, "kind": "kill",
                         "detail": f"killed {k.victim_steam_id}"})
    for g in match.grenades:
        if g.thrower_steam_id == steam_id:
            rows.append({"tick": g.throw_tick, "roundNum": g.round_num, "kind": "prop",
                         "detail": g.grenade_type})
    rows.sort(key=lambda r: r["tick"])
    return rows[:TIMELINE_LIMIT]


class HawkService:
    """All state behind the HTTP surface; independent of FastAPI."""

    def __init__(self, data_dir: str | Path, bundle: HawkBundle | None):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        (self.data_dir / "submitted").mkdir(exist_ok=True)
        (self.data_dir / "corpus" / "matches").mkdir(parents=True, exist_ok=True)
        (self.data_dir / "corpus" / "labels").mkdir(parents=True, exist_ok=True)
        self.reports_path = self.data_dir / "reports.jsonl"
        self.ledger_path = self.data_dir / "ledger.jsonl"
        self.bundle = bundle
        self.lock = threading.Lock()
        self.reports: dict[str, dict] = {}
        self.verdicts: dict[tuple[str, str], dict] = {}
        self.banned: set[tuple[str, str]] = set()
        self._replay_logs()

    # -- log replay -----------------------------------------------------------

    def _replay_logs(self) -> None:
        if self.reports_path.exists():
            for line in self.reports_path.read_text().splitlines():
                if line.strip():
                    report = json.loads(line)
                    self.reports[report["reportId"]] = report
        if self.ledger_path.exists():
            for line in self.ledger_path.read_text().splitlines():
                if line.strip():
                    self._apply_ledger_record(json.loads(line))

    def _apply_ledger_record(self, record: dict) -> None:
        key = (record["reportId"], record["steamId"])
        self.verdicts[key] = record
        if record["gmVerdict"] == "confirmed":
            report = self.reports.get(record["reportId"])
            if report is not None:
                self.banned.add((report["matchId"], record["steamId"]))

    def banned_db_state(self) -> bytes:
        """Canonical byte form of the banned database (for replay checks)."""
        return json.dumps(sorted(self.banned), separators=(",", ":")).encode()

    # -- detection --------------------------------------------------------------

    def submit_match(self, raw: bytes) -> dict:
        if self.bundle is None:
            raise HTTPException(status_code=503, detail="ModelNotLoaded")
        match = parse_match_json(raw)  # SchemaError/ConsistencyError -> 400 upstream
        with self.lock:
            (self.data_dir / "submitted" / f"{match.match_id}.json").write_text(
                serialize_match(match)
            )
        bundle = self.bundle
        samples = build_samples([(match, None)], bundle.feature_config)
        report_id = uuid.uuid4().hex
        players = []
        for sample in samples:
            decision = bundle.decide(sample)
            players.append({
                "steamId": sample.steam_id,
                "dPov": decision["d_pov"],
                "sPov": decision["s_pov"],
                "dStats": decision["d_stats"],
                "sStats": decision["s_stats"],
                "dSpc": decision["d_spc"],
                "sSpc": decision["s_spc"],
                "w": decision["w"],
                "epsilon": decision["epsilon"],
                "dHawk": decision["d_hawk"],
                "topFeatures": bundle.feature_zscores(sample)[:8],
                "timeline": _timeline(match, sample.steam_id),
            })
        report = {
            "reportId": report_id,
            "matchId": match.match_id,
            "createdUtc": _now_utc(),
            "modelVersion": bundle.version,
            "lambda": bundle.mvin.lam.tolist(),
            "epsilon": bundle.mvin.epsilon,
            "players": players,
        }
        with self.lock:
            with open(self.reports_path, "a") as fh:
                fh.write(json.dumps(report, separators=(",", ":")) + "\n")
            self.reports[report_id] = report
        return report

    # -- review queue -------------------------------------------------------------

    def feature_ranking(self) -> list[str]:
        """Train-split Mann-Whitney order (most distinguishing first)."""
        if self.bundle is None:
            return []
        return [name for name, _, _ in self.bundle.ranking]

    def flagged(self, status: str = "pending") -> list[dict]:
        """Players whose fused value passes the *current* threshold, W desc."""
        bundle = self.bundle
        out = []
        for report in self.reports.values():
            for player in report["players"]:
                w = fuse(bundle.mvin.lam, player["dPov"], player["dStats"], player["dSpc"])
                if not decide_hawk(w, bundle.mvin.epsilon):
                    continue
                decided = (report["reportId"], player["steamId"]) in self.verdicts
                if status == "pending" and decided:
                    continue
                out.append({
                    "reportId": report["reportId"],
                    "matchId": report["matchId"],
                    "steamId": player["steamId"],
                    "w": w,
                    "epsilon": bundle.mvin.epsilon,
                    "status": "decided" if decided else "pending",
                    "evidence": {
                        "topFeatures": player["topFeatures"],
                        "timeline": player["timeline"],
                        "subsystems": {
                            "pov": {"decision": player["dPov"], "score": player["sPov"]},
                            "stats": {"decision": player["dStats"], "score": player["sStats"]},
                            "spc": {"decision": player["dSpc"], "score": player["sSpc"]},
                        },
                    },
                })
        out.sort(key=lambda item: (-item["w"], item["reportId"], item["steamId"]))
        return out

    # -- verdicts -----------------------------------------------------------------

    def post_verdict(self, report_id: str, steam_id: str, verdict: str, gm_id: str,
                     cheat_type: str = "aimbot") -> dict:
        report = self.reports.get(report_id)
        if report is None or all(p["steamId"] != steam_id for p in report["players"]):
            raise HTTPException(status_code=404, detail="UnknownReport")
        with self.lock:
            key = (report_id, steam_id)
            if key in self.verdicts:
                raise HTTPException(status_code=409, detail="AlreadyDecided")
            record = {
                "reportId": report_id,
                "steamId": steam_id,
                "gmVerdict": verdict,
                "gmId": gm_id,
                "timestamp": _now_utc(),
            }
            with open(self.ledger_path, "a") as fh:
                fh.write(json.dumps(record, separators=(",", ":")) + "\n")
            self._apply_ledger_record(record)
            if verdict == "confirmed":
                self._grow_corpus(report["matchId"], steam_id, cheat_type, record["timestamp"])
        return record

    def _grow_corpus(self, match_id: str, steam_id: str, cheat_type: str, when: str) -> None:
        """Stage-4 side effect: the confirmed match joins the training corpus
        exactly once; the label file accumulates confirmed players."""
        src = self.data_dir / "submitted" / f"{match_id}.json"
        match_dst = self.data_dir / "corpus" / "matches" / f"{match_id}.json"
        if not match_dst.exists() and src.exists():
            match_dst.write_text(src.read_text())
        labels_path = self.data_dir / "corpus" / "labels" / f"{match_id}.json"
        existing: dict[str, PlayerLabel] = {}
        if labels_path.exists():
            from .replay.parse import parse_labels_json

            for lab in parse_labels_json(labels_path.read_bytes()).labels:
                existing[lab.steam_id] = lab
        existing[steam_id] = PlayerLabel(
            steam_id=steam_id, cheater=True, cheat_type=cheat_type, ban_date_utc=when
        )
        labels = LabelSet(match_id=match_id, labels=tuple(existing.values()))
        labels_path.write_text(serialize_labels(labels))

    # -- optimizer ------------------------------------------------------------------

    def reoptimize(self, objective: ObjectiveSpec, dry_run: bool = False) -> dict:
        """Re-fit the threshold optimizer; a dry run previews without swapping."""
        if self.bundle is None:
            raise HTTPException(status_code=503, detail="ModelNotLoaded")
        with self.lock:
            try:
                if dry_run:
                    from .mvin import optimize

                    old = self.bundle.mvin
                    new = optimize(
                        self.bundle.validation_triples, self.bundle.validation_labels, objective
                    )
                else:
                    old, new = self.bundle.reoptimize(objective)
            except InfeasibleConstraint as exc:
                raise HTTPException(status_code=422, detail=f"InfeasibleConstraint: {exc}")
        return {"old": old.to_dict(), "new": new.to_dict(), "applied": not dry_run}


def create_app(service: HawkService) -> FastAPI:
    app = FastAPI(title="hawk-anticheat")
    token = os.environ.get("HAWK_TOKEN", "")

    def auth(authorization: str | None = Header(default=None)):
        if token and authorization != f"Bearer {token}":
            raise HTTPException(status_code=401, detail="invalid token")

    @app.post("/matches", dependencies=[Depends(auth)])
    async def post_match(request: Request):
        raw = await request.body()
        try:
            report = service.submit_match(raw)
        except (SchemaError, ConsistencyError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"reportId": report["reportId"]}

    @app.get("/reports/{report_id}", dependencies=[Depends(auth)])
    def get_report(report_id: str):
        report = service.reports.get(report_id)
        if report is None:
            raise HTTPException(status_code=404, detail="UnknownReport")
        return report

    @app.get("/flagged", dependencies=[Depends(auth)])
    def get_flagged(status: str = "pending"):
        return {"flagged": service.flagged(status), "ranking": service.feature_ranking()}

    @app.post("/verdicts", dependencies=[Depends(auth)])
    async def post_verdict(request: Request):
        body = await request.json()
        for key in ("reportId", "steamId", "verdict"):
            if key not in body:
                raise HTTPException(status_code=400, detail=f"missing field {key}")
        if body["verdict"] not in ("confirmed", "rejected"):
            raise HTTPException(status_code=400, detail="verdict must be confirmed|rejected")
        return service.post_verdict(
            body["reportId"],
            body["steamId"],
            body["verdict"],
            body.get("gmId", "gm-unknown"),
            body.get("cheatType", "aimbot"),
        )

    @app.get("/optimizer", dependencies=[Depends(auth)])
    def get_optimizer():
        if service.bundle is None:
            raise HTTPException(status_code=503, detail="ModelNotLoaded")
        return service.bundle.mvin.to_dict()

    @app.post("/optimizer", dependencies=[Depends(auth)])
    async def post_optimizer(request: Request):
        body = await request.json()
        obj = body.get("objective", {})
        try:
            spec = ObjectiveSpec(kind=obj.get("kind", "accuracy"), r=obj.get("r"))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return service.reoptimize(spec, dry_run=bool(body.get("dryRun", False)))

    return app


def serve(data_dir: str, model_dir: str | None, bind: str = "127.0.0.1:8080"):
    import uvicorn

    bundle = HawkBundle.load(model_dir) if model_dir else None
    service = HawkService(data_dir, bundle)
    host, _, port = bind.partition(":")
    uvicorn.run(create_app(service), host=host or "127.0.0.1", port=int(port or 8080))
