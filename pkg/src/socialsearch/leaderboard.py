"""Gamified leaderboards over an append-only activity ledger.

Eleven point-bearing actions carry fixed scores. Points are stored as
integer tenths so sums and negations stay exact. Deleting a contribution
appends a mirror record with negated points for the deleting user only;
points other users earned on the deleted element are untouched.

Two view designs: the absolute hybrid pins the active user below the top
ten; the 50-50 hybrid shows the top five plus a five-row band centered on
the active user.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import (
    NotOwnerError,
    UnknownActionError,
    UnknownActivityError,
    UnknownEntityError,
    UnknownUserError,
)
from .graph import GraphSnapshot, SocialGraph


class ActionKind(str, Enum):
    SOURCE_ADD = "source_add"
    SOURCE_SHARE = "source_share"
    SOURCE_RATE = "source_rate"
    SOURCE_COMMENT = "source_comment"
    SOURCE_UPVOTE_COMMENT = "source_upvote_comment"
    POST_ADD = "post_add"
    POST_SHARE = "post_share"
    POST_LIKE = "post_like"
    POST_COMMENT = "post_comment"
    POST_UPVOTE_COMMENT = "post_upvote_comment"
    INCLUDE = "include"


# Integer tenths of a point per action.
POINTS_TENTHS: dict[ActionKind, int] = {
    ActionKind.SOURCE_ADD: 91,
    ActionKind.SOURCE_SHARE: 78,
    ActionKind.SOURCE_RATE: 63,
    ActionKind.SOURCE_COMMENT: 64,
    ActionKind.SOURCE_UPVOTE_COMMENT: 51,
    ActionKind.POST_ADD: 70,
    ActionKind.POST_SHARE: 58,
    ActionKind.POST_LIKE: 57,
    ActionKind.POST_COMMENT: 62,
    ActionKind.POST_UPVOTE_COMMENT: 57,
    ActionKind.INCLUDE: 47,
}

COMMENT_ACTIONS = frozenset({ActionKind.SOURCE_COMMENT, ActionKind.POST_COMMENT})
UPVOTE_ACTIONS = frozenset({ActionKind.SOURCE_UPVOTE_COMMENT, ActionKind.POST_UPVOTE_COMMENT})


class Window(str, Enum):
    WEEK = "week"
    MONTH = "month"
    SEMESTER = "semester"
    ALL_TIME = "all"


# Rolling windows measured back from `now`.
WINDOW_SECONDS: dict[Window, float] = {
    Window.WEEK: 7 * 86400.0,
    Window.MONTH: 30 * 86400.0,
    Window.SEMESTER: 180 * 86400.0,
}


class LeaderboardKind(str, Enum):
    TOP_CONTRIBUTOR = "contributor"
    TOP_RESPONDER = "responder"


class Design(str, Enum):
    HYBRID_ABSOLUTE = "hybrid-absolute"
    HYBRID_5050 = "hybrid50"


@dataclass(frozen=True)
class Activity:
    id: int
    actor: str
    action: ActionKind
    location: str
    object: str
    ts: float
    points_tenths: int
    ref: int | None = None  # deleted/upvoted activity this record points at

    @property
    def points(self) -> float:
        return self.points_tenths / 10

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "actor": self.actor,
            "action": self.action.value,
            "location": self.location,
            "object": self.object,
            "ts": self.ts,
            "points": self.points,
            "ref": self.ref,
        }


@dataclass(frozen=True)
class LeaderboardRow:
    user: str
    score: float
    rank: int
    active: bool

    def to_dict(self) -> dict:
        return {"user": self.user, "score": self.score, "rank": self.rank, "active": self.active}


@dataclass(frozen=True)
class LeaderboardView:
    context: str | None
    window: Window
    kind: LeaderboardKind
    design: Design
    rows: tuple[LeaderboardRow, ...]

    def to_dict(self) -> dict:
        return {
            "context": self.context,
            "window": self.window.value,
            "kind": self.kind.value,
            "design": self.design.value,
            "rows": [row.to_dict() for row in self.rows],
        }


def parse_action(token: str) -> ActionKind:
    try:
        return ActionKind(token)
    except ValueError:
        raise UnknownActionError(token) from None


class ActivityLedger:
    """Append-only; records are never mutated or removed."""

    def __init__(self, graph: GraphSnapshot | SocialGraph, path: str | Path | None = None,
                 upvote_weight: float = 1.0):
        self.graph = graph
        self.upvote_weight_tenths = round(upvote_weight * 10)
        self._records: list[Activity] = []
        self._by_id: dict[int, Activity] = {}
        self._deleted: set[int] = set()
        self._lock = threading.Lock()
        self._path = Path(path) if path is not None else None
        if self._path is not None and self._path.exists():
            self._load()

    def _load(self) -> None:
        with open(self._path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                activity = Activity(
                    id=int(rec["id"]),
                    actor=rec["actor"],
                    action=ActionKind(rec["action"]),
                    location=rec["location"],
                    object=rec["object"],
                    ts=float(rec["ts"]),
                    points_tenths=round(float(rec["points"]) * 10),
                    ref=rec.get("ref"),
                )
                self._records.append(activity)
                self._by_id[activity.id] = activity
                if activity.points_tenths < 0 and activity.ref is not None:
                    self._deleted.add(activity.ref)

    def _append(self, activity: Activity) -> None:
        self._records.append(activity)
        self._by_id[activity.id] = activity
        if self._path is not None:
            with open(self._path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(activity.to_dict(), ensure_ascii=False) + "\n")

    def activities(self) -> tuple[Activity, ...]:
        with self._lock:
            return tuple(self._records)

    def record_activity(
        self,
        actor: str,
        action: ActionKind | str,
        location: str,
        object_id: str,
        ts: float,
        ref: int | None = None,
    ) -> Activity:
        """Append one action; points come from the fixed table.

        ``ref`` links an upvote-comment record to the comment activity it
        upvotes, which is what lets responder boards credit the comment's
        author.
        """
        kind = parse_action(action) if isinstance(action, str) else action
        for entity_id in (actor, location, object_id):
            if not self.graph.has_entity(entity_id):
                raise UnknownEntityError(entity_id)
        with self._lock:
            if ref is not None and ref not in self._by_id:
                raise UnknownActivityError(str(ref))
            activity = Activity(
                id=len(self._records) + 1,
                actor=actor,
                action=kind,
                location=location,
                object=object_id,
                ts=ts,
                points_tenths=POINTS_TENTHS[kind],
                ref=ref,
            )
            self._append(activity)
            return activity

    def record_delete(self, activity_id: int, actor: str, ts: float) -> Activity:
        """Append the negated mirror of the actor's own earlier activity."""
        with self._lock:
            original = self._by_id.get(activity_id)
            if original is None or original.points_tenths < 0:
                raise UnknownActivityError(str(activity_id))
            if activity_id in self._deleted:
                raise UnknownActivityError(f"{activity_id} already deleted")
            if original.actor != actor:
                raise NotOwnerError(f"{actor} does not own activity {activity_id}")
            mirror = Activity(
                id=len(self._records) + 1,
                actor=original.actor,
                action=original.action,
                location=original.location,
                object=original.object,
                ts=ts,
                points_tenths=-original.points_tenths,
                ref=original.id,
            )
            self._deleted.add(original.id)
            self._append(mirror)
            return mirror

    # scoring

    def _matches(self, record: Activity, start: float, end: float, context: str | None) -> bool:
        if record.ts < start or record.ts > end:
            return False
        return context is None or record.location == context

    def score_events_between(
        self,
        start: float,
        end: float,
        kind: LeaderboardKind,
        context: str | None = None,
    ) -> list[tuple[float, int, str, int]]:
        """(ts, record id, credited user, tenths) for every matching record."""
        events: list[tuple[float, int, str, int]] = []
        with self._lock:
            records = list(self._records)
            by_id = dict(self._by_id)
        for record in records:
            if not self._matches(record, start, end, context):
                continue
            if kind is LeaderboardKind.TOP_CONTRIBUTOR:
                events.append((record.ts, record.id, record.actor, record.points_tenths))
            else:
                if record.action in COMMENT_ACTIONS:
                    events.append((record.ts, record.id, record.actor, record.points_tenths))
                elif record.action in UPVOTE_ACTIONS and record.ref is not None:
                    target = by_id.get(record.ref)
                    if target is not None and target.action in COMMENT_ACTIONS:
                        sign = 1 if record.points_tenths > 0 else -1
                        events.append(
                            (record.ts, record.id, target.actor, sign * self.upvote_weight_tenths)
                        )
        return events

    def scores_between(
        self,
        start: float,
        end: float,
        kind: LeaderboardKind,
        context: str | None = None,
    ) -> dict[str, int]:
        """Net tenths per user over [start, end]; zero/negative users included."""
        totals: dict[str, int] = {}
        for _, _, user, tenths in self.score_events_between(start, end, kind, context):
            totals[user] = totals.get(user, 0) + tenths
        return totals

    def compute_scores(
        self,
        kind: LeaderboardKind,
        window: Window,
        now: float,
        context: str | None = None,
    ) -> dict[str, float]:
        """Points per user for the filter; users at or below zero are omitted."""
        start = now - WINDOW_SECONDS[window] if window is not Window.ALL_TIME else float("-inf")
        totals = self.scores_between(start, now, kind, context)
        return {user: tenths / 10 for user, tenths in totals.items() if tenths > 0}

    def ranking(
        self,
        kind: LeaderboardKind,
        window: Window,
        now: float,
        context: str | None = None,
    ) -> list[tuple[str, float]]:
        """Users ordered by score; ties go to whoever reached the score first."""
        start = now - WINDOW_SECONDS[window] if window is not Window.ALL_TIME else float("-inf")
        events = self.score_events_between(start, now, kind, context)
        per_user: dict[str, list[tuple[float, int, int]]] = {}
        for ts, rec_id, user, tenths in events:
            per_user.setdefault(user, []).append((ts, rec_id, tenths))
        entries = []
        for user, contributions in per_user.items():
            contributions.sort(key=lambda c: (c[0], c[1]))
            final = sum(c[2] for c in contributions)
            if final <= 0:
                continue
            running = 0
            reached = contributions[-1][0]
            for ts, _, tenths in contributions:
                running += tenths
                if running == final:
                    reached = ts
                    break
            entries.append((user, final, reached))
        entries.sort(key=lambda e: (-e[1], e[2], e[0]))
        return [(user, tenths / 10) for user, tenths, _ in entries]

    def build_view(
        self,
        kind: LeaderboardKind,
        window: Window,
        now: float,
        active_user: str,
        design: Design,
        context: str | None = None,
    ) -> LeaderboardView:
        if not self.graph.has_entity(active_user):
            raise UnknownUserError(active_user)
        ranked = self.ranking(kind, window, now, context)
        rows = {
            rank: LeaderboardRow(user=user, score=score, rank=rank, active=user == active_user)
            for rank, (user, score) in enumerate(ranked, start=1)
        }
        active_rank = next((r for r, row in rows.items() if row.active), None)
        if active_rank is None:
            # Active user has no points: pin a zero row after the ranked list.
            active_rank = len(rows) + 1
            rows[active_rank] = LeaderboardRow(
                user=active_user, score=0.0, rank=active_rank, active=True
            )

        if design is Design.HYBRID_ABSOLUTE:
            chosen = set(range(1, min(10, len(rows)) + 1)) if rows else set()
            chosen = {r for r in chosen if r in rows}
            chosen.add(active_rank)
        else:
            chosen = {r for r in range(1, 6) if r in rows}
            band_lo = max(1, active_rank - 2)
            band_hi = min(max(rows), active_rank + 2)
            chosen |= {r for r in range(band_lo, band_hi + 1) if r in rows}
        selected = tuple(rows[r] for r in sorted(chosen))
        return LeaderboardView(
            context=context, window=window, kind=kind, design=design, rows=selected
        )
