"""Confidential per-user case history: outcomes, error explanations, retrieval, stats.

Persistence is an append-only event log plus a current-state snapshot per
user, except that error explanations are destructive-overwrite: the event
log records *that* an explanation changed, never the text, so no prior
version survives anywhere on disk.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Mapping

from .errors import AccessError, ArgumentError, NotFoundError
from .space import CATEGORICAL, NUMERIC, CaseVector, DomainSchema, Interval, LabelSet, LevelRange, ParameterDef, Value

PENDING = "pending"


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class Precedent:
    id: str
    user: str
    domain: str
    case: CaseVector
    decision: str
    prognosis: str
    outcome: str | None = None
    matches_prognosis: bool | None = None
    discrepancy_explanation: str | None = None
    error_explanation: str | None = None
    session_id: str | None = None
    created_at: str = ""
    updated_at: str = ""
    seq: int = 0

    @property
    def is_pending(self) -> bool:
        return self.outcome is None

    @property
    def decision_correct(self) -> bool | None:
        if self.outcome is None:
            return None
        return self.outcome.strip().lower() == self.decision.strip().lower()


@dataclass(frozen=True)
class ErrorExplanationRow:
    precedent_id: str
    proximity: float
    decision: str
    error_explanation: str | None
    outcome_summary: str
    recorded_at: str

    def to_json(self) -> dict:
        return {
            "precedent_id": self.precedent_id,
            "proximity": round(self.proximity, 6),
            "decision": self.decision,
            "error_explanation": self.error_explanation,
            "outcome_summary": self.outcome_summary,
            "recorded_at": self.recorded_at,
        }


def _norm_deviation(p: ParameterDef, v: Value) -> float:
    """Normalized distance of a value from the parameter's declared norm (0 if none)."""
    if p.norm is None:
        return 0.0
    if p.kind == NUMERIC:
        lo, hi = p.bounds  # type: ignore[misc]
        width = hi - lo
        m = v.mid  # type: ignore[union-attr]
        gap = max(p.norm.lo - m, m - p.norm.hi, 0.0)  # type: ignore[union-attr]
        return min(1.0, gap / width) if width > 0 else 0.0
    if p.kind == CATEGORICAL:
        return 0.0 if v.labels & p.norm.labels else 1.0  # type: ignore[union-attr]
    n_levels = len(p.levels)
    if n_levels <= 1:
        return 0.0
    mid = (p.level_index(v.lo) + p.level_index(v.hi)) / 2.0  # type: ignore[union-attr]
    nlo = p.level_index(p.norm.lo)  # type: ignore[union-attr]
    nhi = p.level_index(p.norm.hi)  # type: ignore[union-attr]
    gap = max(nlo - mid, mid - nhi, 0.0)
    return gap / (n_levels - 1)


def _error_adjusted_distance(p: ParameterDef, a: Value, b: Value) -> float:
    """Per-parameter distance with the measurement-error radius subtracted first."""
    if p.kind == NUMERIC:
        lo, hi = p.bounds  # type: ignore[misc]
        width = hi - lo
        gap = max(0.0, abs(a.mid - b.mid) - p.radius)  # type: ignore[union-attr]
        return min(1.0, gap / width) if width > 0 else 0.0
    if p.kind == CATEGORICAL:
        if a.intersects(b):  # type: ignore[union-attr]
            return 0.0
        adjacency = p.neighbor_map()
        pool = set(a.labels)  # type: ignore[union-attr]
        for label in a.labels:  # type: ignore[union-attr]
            pool |= adjacency.get(label, frozenset())
        return 0.0 if b.labels & pool else 1.0  # type: ignore[union-attr]
    n_levels = len(p.levels)
    if n_levels <= 1:
        return 0.0
    mid_a = (p.level_index(a.lo) + p.level_index(a.hi)) / 2.0  # type: ignore[union-attr]
    mid_b = (p.level_index(b.lo) + p.level_index(b.hi)) / 2.0  # type: ignore[union-attr]
    gap = max(0.0, abs(mid_a - mid_b) - int(p.radius))
    return gap / (n_levels - 1)


def precedent_proximity(v: CaseVector, case: CaseVector, schema: DomainSchema) -> float:
    """Proximity score: error-adjusted distances weighted by informational weight
    and by how far the historical value sits from the declared norm."""
    num = 0.0
    den = 0.0
    for p in schema.parameters:
        a = v.get(p.name)
        b = case.get(p.name)
        if a is None and b is None:
            d = 0.0
        elif a is None or b is None:
            d = schema.missing_penalty
        else:
            d = _error_adjusted_distance(p, a, b)
        g = 1.0 + (_norm_deviation(p, b) if b is not None else 0.0)
        num += p.weight * g * d
        den += p.weight * g
    return num / den if den > 0 else 0.0


class PrecedentStore:
    """Per-user precedent history with ownership enforcement.

    ``data_dir=None`` keeps everything in memory (used by the replay tool and
    tests); otherwise each user gets a directory holding ``events.jsonl`` and
    ``snapshot.json`` with permissions restricted to the service principal.
    """

    def __init__(self, data_dir: str | Path | None = None, clock: Callable[[], str] = _utcnow):
        self._dir = Path(data_dir) if data_dir is not None else None
        self._clock = clock
        self._records: dict[str, Precedent] = {}
        self._seq = 0
        self._lock = threading.Lock()
        if self._dir is not None:
            self._dir.mkdir(parents=True, exist_ok=True)
            os.chmod(self._dir, 0o700)
            self._load()

    # -- persistence --------------------------------------------------------

    def _user_dir(self, user: str) -> Path:
        d = self._dir / "users" / user  # type: ignore[operator]
        d.mkdir(parents=True, exist_ok=True)
        os.chmod(d, 0o700)
        return d

    def _load(self) -> None:
        users = self._dir / "users"  # type: ignore[operator]
        if not users.is_dir():
            return
        for snap in sorted(users.glob("*/snapshot.json")):
            data = json.loads(snap.read_text())
            for raw in data.get("precedents", []):
                rec = _precedent_from_json(raw)
                self._records[rec.id] = rec
                self._seq = max(self._seq, rec.seq)

    def _persist(self, rec: Precedent, event: str) -> None:
        if self._dir is None:
            return
        d = self._user_dir(rec.user)
        log = d / "events.jsonl"
        with log.open("a") as fh:
            # explanation text is deliberately not logged: latest-only storage
            fh.write(json.dumps({"event": event, "precedent": rec.id, "at": self._clock()}) + "\n")
        os.chmod(log, 0o600)
        snapshot = d / "snapshot.json"
        mine = [r for r in self._records.values() if r.user == rec.user]
        mine.sort(key=lambda r: r.seq)
        snapshot.write_text(
            json.dumps({"precedents": [_precedent_to_json(r) for r in mine]}, indent=1)
        )
        os.chmod(snapshot, 0o600)

    # -- guarded accessors ----------------------------------------------------

    def _get_owned(self, precedent_id: str, caller: str) -> Precedent:
        rec = self._records.get(precedent_id)
        if rec is None:
            raise NotFoundError(f"unknown precedent {precedent_id!r}")
        if rec.user != caller:
            raise AccessError("precedent belongs to another user")
        return rec

    def get(self, precedent_id: str, caller: str) -> Precedent:
        return self._get_owned(precedent_id, caller)

    # -- operations -----------------------------------------------------------

    def record_precedent(
        self,
        user: str,
        domain: str,
        case: CaseVector,
        decision: str,
        prognosis: str,
        caller: str,
        session_id: str | None = None,
        outcome: str | None = None,
        matches_prognosis: bool | None = None,
        discrepancy_explanation: str | None = None,
        error_explanation: str | None = None,
        recorded_at: str | None = None,
    ) -> Precedent:
        if caller != user:
            raise AccessError("cannot record a precedent for another user")
        if not user or not domain:
            raise ArgumentError("precedent needs a user and a domain")
        if not prognosis.strip():
            raise ArgumentError("prognosis is mandatory")
        with self._lock:
            self._seq += 1
            now = recorded_at or self._clock()
            rec = Precedent(
                id=f"p-{self._seq:06d}",
                user=user,
                domain=domain,
                case=case,
                decision=decision,
                prognosis=prognosis,
                outcome=outcome,
                matches_prognosis=matches_prognosis,
                discrepancy_explanation=discrepancy_explanation,
                error_explanation=error_explanation,
                session_id=session_id,
                created_at=now,
                updated_at=now,
                seq=self._seq,
            )
            self._records[rec.id] = rec
            self._persist(rec, "recorded")
        return rec

    def submit_outcome(
        self,
        precedent_id: str,
        outcome: str,
        matches_prognosis: bool,
        caller: str,
        discrepancy_explanation: str | None = None,
    ) -> Precedent:
        with self._lock:
            rec = self._get_owned(precedent_id, caller)
            if not rec.is_pending:
                raise ArgumentError("outcome already recorded")
            if not outcome.strip():
                raise ArgumentError("outcome text is mandatory")
            if not matches_prognosis and not (discrepancy_explanation or "").strip():
                raise ArgumentError(
                    "an outcome that differs from the prognosis needs a discrepancy explanation"
                )
            rec.outcome = outcome
            rec.matches_prognosis = matches_prognosis
            rec.discrepancy_explanation = discrepancy_explanation
            rec.updated_at = self._clock()
            self._persist(rec, "outcome")
        return rec

    def update_error_explanation(self, precedent_id: str, text: str, caller: str) -> Precedent:
        """Overwrite the error explanation; empty text clears it. No history kept."""
        with self._lock:
            rec = self._get_owned(precedent_id, caller)
            rec.error_explanation = text.strip() or None
            rec.updated_at = self._clock()
            self._persist(rec, "error_explanation_updated")
        return rec

    def _owned_records(self, user: str, caller: str, domain: str | None = None) -> list[Precedent]:
        if caller != user:
            raise AccessError("cannot read another user's history")
        recs = [r for r in self._records.values() if r.user == user]
        if domain is not None:
            recs = [r for r in recs if r.domain == domain]
        return recs

    def list_error_rows(
        self,
        user: str,
        caller: str,
        domain: str | None = None,
        decision: str | None = None,
        date_from: str | None = None,
        date_to: str | None = None,
    ) -> list[ErrorExplanationRow]:
        """The user's error-explanation table, newest first, with optional filters."""
        recs = [
            r
            for r in self._owned_records(user, caller, domain)
            if r.error_explanation
        ]
        if decision is not None:
            recs = [r for r in recs if r.decision == decision]
        if date_from is not None:
            recs = [r for r in recs if r.created_at >= date_from]
        if date_to is not None:
            recs = [r for r in recs if r.created_at <= date_to]
        recs.sort(key=lambda r: -r.seq)
        return [_row(r, 0.0) for r in recs]

    def query_similar(
        self,
        user: str,
        v: CaseVector,
        schema: DomainSchema,
        caller: str,
        domain: str | None = None,
        limit: int = 10,
        max_proximity: float | None = None,
    ) -> tuple[list[ErrorExplanationRow], ErrorExplanationRow | None]:
        """Rows sorted ascending by proximity to ``v`` (ties: newest first),
        plus the most probable error: the nearest row with an explanation."""
        recs = self._owned_records(user, caller, domain)
        scored = sorted(
            ((precedent_proximity(v, r.case, schema), r) for r in recs),
            key=lambda pr: (pr[0], -pr[1].seq),
        )
        if max_proximity is not None:
            scored = [(prox, r) for prox, r in scored if prox <= max_proximity]
        rows = [_row(r, prox) for prox, r in scored[: max(0, limit)]]
        warning = next((row for row in rows if row.error_explanation), None)
        return rows, warning

    def progress_stats(
        self,
        user: str,
        caller: str,
        domain: str,
        window_days: int = 30,
    ) -> list[dict]:
        """Per-window decision accuracy for the user next to the cohort mean.

        Cohort numbers are aggregates over every user in the domain; no other
        user's record or id leaves this method.
        """
        if window_days < 1:
            raise ArgumentError("window must be at least one day")
        self._owned_records(user, caller, domain)  # ownership check
        decided = [
            r
            for r in self._records.values()
            if r.domain == domain and r.decision_correct is not None
        ]
        if not any(r.user == user for r in decided):
            return []

        def bucket(rec: Precedent) -> int:
            ts = datetime.fromisoformat(rec.created_at.replace("Z", "+00:00"))
            return int(ts.timestamp() // (window_days * 86400))

        buckets: dict[int, dict[str, list[bool]]] = {}
        for r in decided:
            b = buckets.setdefault(bucket(r), {"user": [], "cohort": []})
            b["cohort"].append(bool(r.decision_correct))
            if r.user == user:
                b["user"].append(bool(r.decision_correct))
        series = []
        for idx in sorted(k for k, b in buckets.items() if b["user"]):
            b = buckets[idx]
            start = datetime.fromtimestamp(idx * window_days * 86400, tz=timezone.utc)
            end = datetime.fromtimestamp((idx + 1) * window_days * 86400, tz=timezone.utc)
            series.append(
                {
                    "start": start.isoformat(timespec="seconds"),
                    "end": end.isoformat(timespec="seconds"),
                    "user_cases": len(b["user"]),
                    "user_accuracy": round(sum(b["user"]) / len(b["user"]), 6),
                    "cohort_cases": len(b["cohort"]),
                    "cohort_accuracy": round(sum(b["cohort"]) / len(b["cohort"]), 6),
                }
            )
        return series


def _row(rec: Precedent, proximity: float) -> ErrorExplanationRow:
    if rec.outcome is None:
        summary = "outcome pending"
    elif rec.decision_correct:
        summary = f"outcome {rec.outcome} (as decided)"
    else:
        summary = f"outcome {rec.outcome} (decision was {rec.decision})"
    return ErrorExplanationRow(
        precedent_id=rec.id,
        proximity=proximity,
        decision=rec.decision,
        error_explanation=rec.error_explanation,
        outcome_summary=summary,
        recorded_at=rec.created_at,
    )


def _value_to_json(v: Value) -> object:
    if isinstance(v, Interval):
        return {"interval": [v.lo, v.hi]}
    if isinstance(v, LevelRange):
        return {"levels": [v.lo, v.hi]}
    return {"labels": sorted(v.labels)}


def _value_from_json(raw: Mapping) -> Value:
    if "interval" in raw:
        return Interval(*raw["interval"])
    if "levels" in raw:
        return LevelRange(*raw["levels"])
    return LabelSet(frozenset(raw["labels"]))


def _precedent_to_json(rec: Precedent) -> dict:
    return {
        "id": rec.id,
        "user": rec.user,
        "domain": rec.domain,
        "case": [[n, _value_to_json(v)] for n, v in rec.case],
        "decision": rec.decision,
        "prognosis": rec.prognosis,
        "outcome": rec.outcome,
        "matches_prognosis": rec.matches_prognosis,
        "discrepancy_explanation": rec.discrepancy_explanation,
        "error_explanation": rec.error_explanation,
        "session_id": rec.session_id,
        "created_at": rec.created_at,
        "updated_at": rec.updated_at,
        "seq": rec.seq,
    }


def _precedent_from_json(raw: Mapping) -> Precedent:
    return Precedent(
        id=raw["id"],
        user=raw["user"],
        domain=raw["domain"],
        case=CaseVector(tuple((n, _value_from_json(v)) for n, v in raw["case"])),
        decision=raw["decision"],
        prognosis=raw["prognosis"],
        outcome=raw.get("outcome"),
        matches_prognosis=raw.get("matches_prognosis"),
        discrepancy_explanation=raw.get("discrepancy_explanation"),
        error_explanation=raw.get("error_explanation"),
        session_id=raw.get("session_id"),
        created_at=raw.get("created_at", ""),
        updated_at=raw.get("updated_at", ""),
        seq=int(raw.get("seq", 0)),
    )
