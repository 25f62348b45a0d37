"""Pre-typing query suggestions: personal history plus time-windowed trends.

The suggestion list shown before any keystroke has two halves: up to five
of the requesting user's own most recent queries (deduplicated), then up
to five trending items ranked by how often they were issued inside the
trailing window. Entries that recorded a click on an entity surface as a
direct entity link instead of query text.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from . import text
from .errors import EmptyQueryError, UnknownUserError
from .graph import GraphSnapshot, SocialGraph

HISTORY_SLOTS = 5
TRENDING_SLOTS = 5
DEFAULT_WINDOW_DAYS = 7.0


@dataclass(frozen=True)
class QueryLogEntry:
    user: str
    raw: str
    norm: str
    ts: float
    clicked: str | None = None


@dataclass(frozen=True)
class Suggestion:
    source: str  # "history" | "trending"
    kind: str  # "query" | "entity"
    text: str | None
    entity: str | None
    score: float

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "kind": self.kind,
            "text": self.text,
            "entity": self.entity,
            "score": self.score,
        }

    def payload_key(self) -> tuple[str, str]:
        if self.kind == "entity":
            return ("entity", self.entity or "")
        return ("query", text.normalize(self.text or ""))


class QueryLog:
    """Append-only query log, optionally persisted as JSON lines."""

    def __init__(self, path: str | Path | None = None):
        self._entries: list[QueryLogEntry] = []
        self._lock = threading.Lock()
        self._path = Path(path) if path is not None else None
        if self._path is not None and self._path.exists():
            with open(self._path, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = json.loads(line)
                    self._entries.append(
                        QueryLogEntry(
                            user=rec["user"],
                            raw=rec["q"],
                            norm=rec["norm"],
                            ts=float(rec["ts"]),
                            clicked=rec.get("clicked"),
                        )
                    )

    def append(self, entry: QueryLogEntry) -> None:
        with self._lock:
            self._entries.append(entry)
            if self._path is not None:
                with open(self._path, "a", encoding="utf-8") as fh:
                    fh.write(
                        json.dumps(
                            {
                                "user": entry.user,
                                "q": entry.raw,
                                "norm": entry.norm,
                                "ts": entry.ts,
                                "clicked": entry.clicked,
                            },
                            ensure_ascii=False,
                        )
                        + "\n"
                    )

    def entries(self) -> tuple[QueryLogEntry, ...]:
        with self._lock:
            return tuple(self._entries)

    def __len__(self) -> int:
        return len(self._entries)


class Suggester:
    def __init__(
        self,
        graph: GraphSnapshot | SocialGraph,
        log: QueryLog | None = None,
        window_days: float = DEFAULT_WINDOW_DAYS,
    ):
        self.graph = graph
        self.log = log if log is not None else QueryLog()
        self.window_seconds = window_days * 86400.0

    def log_query(self, user: str, raw: str, ts: float, clicked: str | None = None) -> QueryLogEntry:
        if not self.graph.has_entity(user):
            raise UnknownUserError(user)
        norm = text.normalize(raw)
        if not norm:
            raise EmptyQueryError(raw)
        entry = QueryLogEntry(user=user, raw=raw, norm=norm, ts=ts, clicked=clicked)
        self.log.append(entry)
        return entry

    def suggest(self, user: str, now: float) -> list[Suggestion]:
        if not self.graph.has_entity(user):
            raise UnknownUserError(user)
        entries = [e for e in self.log.entries() if e.ts <= now]
        history = self._history(user, entries)
        taken = {s.payload_key() for s in history}
        trending = self._trending(entries, now, taken)
        return history + trending

    def _history(self, user: str, entries: list[QueryLogEntry]) -> list[Suggestion]:
        # Dedup by normalized text, keeping the latest entry; a click on that
        # latest entry turns the suggestion into a direct entity link.
        latest: dict[str, QueryLogEntry] = {}
        for entry in entries:
            if entry.user != user:
                continue
            kept = latest.get(entry.norm)
            if kept is None or entry.ts >= kept.ts:
                latest[entry.norm] = entry
        recent = sorted(latest.values(), key=lambda e: (-e.ts, e.norm))
        out = []
        for entry in recent[:HISTORY_SLOTS]:
            out.append(
                Suggestion(
                    source="history",
                    kind="entity" if entry.clicked else "query",
                    text=None if entry.clicked else entry.raw,
                    entity=entry.clicked,
                    score=entry.ts,
                )
            )
        return out

    def _trending(
        self, entries: list[QueryLogEntry], now: float, exclude: set[tuple[str, str]]
    ) -> list[Suggestion]:
        start = now - self.window_seconds
        groups: dict[tuple[str, str], dict] = {}
        for entry in entries:
            if entry.ts < start:
                continue
            key = ("entity", entry.clicked) if entry.clicked else ("query", entry.norm)
            group = groups.get(key)
            if group is None:
                groups[key] = {"count": 1, "latest": entry.ts, "display": entry.raw}
            else:
                group["count"] += 1
                if entry.ts >= group["latest"]:
                    group["latest"] = entry.ts
                    group["display"] = entry.raw
        ranked = sorted(
            groups.items(), key=lambda kv: (-kv[1]["count"], -kv[1]["latest"], kv[0][1])
        )
        out = []
        for (kind, ident), group in ranked:
            if (kind, ident) in exclude:
                continue
            out.append(
                Suggestion(
                    source="trending",
                    kind=kind,
                    text=None if kind == "entity" else group["display"],
                    entity=ident if kind == "entity" else None,
                    score=float(group["count"]),
                )
            )
            if len(out) == TRENDING_SLOTS:
                break
        return out
