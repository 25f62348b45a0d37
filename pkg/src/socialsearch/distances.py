"""Landmark-based approximation of social-graph hop distances.

Distances from each landmark are precomputed by breadth-first search and
truncated at 3 hops; anything farther counts as unreachable. A pairwise
distance is approximated as the minimum over landmarks of the two stored
legs, so it is always an upper bound on the true shortest path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyGraphError, InvalidKError, UnknownIdError
from .graph import GraphSnapshot

INFINITE = math.inf

#: distances above the cutoff are not stored and are treated as infinite
DISTANCE_CUTOFF = 3
#: normalization constant: similarity = 1 - d / MAX_DISTANCE
MAX_DISTANCE = 4


@dataclass(frozen=True)
class CompressionReport:
    stored_pairs: int
    total_pairs: int
    saving_ratio: float

    def to_dict(self) -> dict:
        return {
            "stored_pairs": self.stored_pairs,
            "total_pairs": self.total_pairs,
            "saving_ratio": self.saving_ratio,
        }


#: larger than any storable two-leg sum; marks "landmark unreachable"
_FAR = 99


@dataclass(frozen=True)
class DistanceIndex:
    """Immutable after build; safe for unrestricted concurrent reads."""

    landmarks: tuple[str, ...]
    table: dict[str, dict[str, int]]  # landmark -> node -> hop distance <= cutoff
    labels: dict[str, dict[str, int]]  # node -> landmark -> hop distance (inverse view)
    # node -> ((landmark position, distance), ...): the hot-path view of `labels`
    compact: dict[str, tuple[tuple[int, int], ...]]
    cutoff: int = DISTANCE_CUTOFF
    max_d: int = MAX_DISTANCE


def default_landmark_count(entity_count: int) -> int:
    """Sublinear default that still fully covers small graphs."""
    return min(entity_count, max(16, math.ceil(math.sqrt(entity_count))))


def _bfs_ball(adjacency: dict[str, tuple[str, ...]], start: str, cutoff: int) -> dict[str, int]:
    dist = {start: 0}
    frontier = [start]
    depth = 0
    while frontier and depth < cutoff:
        depth += 1
        nxt = []
        for node in frontier:
            for neighbor in adjacency[node]:
                if neighbor not in dist:
                    dist[neighbor] = depth
                    nxt.append(neighbor)
        frontier = nxt
    return dist


def build_distance_index(snapshot: GraphSnapshot, k: int | None = None) -> DistanceIndex:
    """Pick the k highest-degree nodes as landmarks and store their 3-hop balls.

    Deterministic: landmark ties break on id, BFS expands neighbors in
    sorted order, so two builds from equal snapshots are identical.
    """
    n = len(snapshot.entities)
    if n == 0:
        raise EmptyGraphError("cannot index an empty graph")
    if k is None:
        k = default_landmark_count(n)
    if k < 1 or k > n:
        raise InvalidKError(f"k={k} not in [1, {n}]")

    by_degree = sorted(snapshot.adjacency, key=lambda node: (-len(snapshot.adjacency[node]), node))
    landmarks = tuple(by_degree[:k])

    table: dict[str, dict[str, int]] = {}
    labels: dict[str, dict[str, int]] = {node: {} for node in sorted(snapshot.entities)}
    compact: dict[str, list[tuple[int, int]]] = {node: [] for node in labels}
    for position, landmark in enumerate(landmarks):
        ball = _bfs_ball(snapshot.adjacency, landmark, DISTANCE_CUTOFF)
        table[landmark] = ball
        for node, d in ball.items():
            labels[node][landmark] = d
            compact[node].append((position, d))
    return DistanceIndex(
        landmarks=landmarks,
        table=table,
        labels=labels,
        compact={node: tuple(pairs) for node, pairs in compact.items()},
    )


def approx_distance(index: DistanceIndex, u: str, e: str) -> int | float:
    """Upper-bound hop distance in {0,1,2,3}, or INFINITE beyond the cutoff."""
    if u not in index.labels:
        raise UnknownIdError(u)
    if e not in index.labels:
        raise UnknownIdError(e)
    if u == e:
        return 0
    first, second = index.labels[u], index.labels[e]
    if len(first) > len(second):
        first, second = second, first
    best: int | float = INFINITE
    for landmark, d_first in first.items():
        d_second = second.get(landmark)
        if d_second is not None:
            total = d_first + d_second
            if total < best:
                best = total
    return best if best <= index.cutoff else INFINITE


def user_similarity(index: DistanceIndex, u: str, e: str) -> float:
    """1 - d/4 over the approximated distance; unreachable pairs score 0."""
    d = approx_distance(index, u, e)
    if d is INFINITE:
        return 0.0
    return 1.0 - d / index.max_d


def distance_row(index: DistanceIndex, u: str) -> list[int]:
    """Per-landmark distances from one node, for bulk similarity scoring."""
    if u not in index.compact:
        raise UnknownIdError(u)
    row = [_FAR] * len(index.landmarks)
    for position, d in index.compact[u]:
        row[position] = d
    return row


def similarity_from_row(index: DistanceIndex, row: list[int], u: str, e: str) -> float:
    """Same value as user_similarity(index, u, e), one row lookup at a time."""
    if u == e:
        return 1.0
    pairs = index.compact.get(e)
    if pairs is None:
        raise UnknownIdError(e)
    best = _FAR
    for position, d in pairs:
        total = row[position] + d
        if total < best:
            best = total
    if best > index.cutoff:
        return 0.0
    return 1.0 - best / index.max_d


def compression_report(index: DistanceIndex) -> CompressionReport:
    stored = sum(len(ball) for ball in index.table.values())
    total = len(index.landmarks) * len(index.labels)
    return CompressionReport(
        stored_pairs=stored,
        total_pairs=total,
        saving_ratio=1.0 - stored / total,
    )
