"""Blends topical and social similarity into ranked search and autocomplete.

The overall score is the weighted mean (alpha * topical + beta * social)
/ (alpha + beta). Search scores topical relevance as the mean of the
trigram partial match and the tf-idf exact match; autocomplete uses the
partial match alone to stay within its latency budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import distances, text
from .errors import EmptyQueryError, OutOfRangeInputError, UnknownUserError
from .graph import AUTOCOMPLETE_KINDS, SEARCH_KINDS, EntityKind, GraphSnapshot

DEFAULT_SEARCH_LIMIT = 25
DEFAULT_AUTOCOMPLETE_LIMIT = 10

# Deterministic tie-break order across result kinds.
KIND_ORDER = {
    EntityKind.USER: 0,
    EntityKind.CONCEPT: 1,
    EntityKind.COURSE: 2,
    EntityKind.SOURCE: 3,
    EntityKind.POST: 4,
    EntityKind.ORIGIN: 5,
    EntityKind.TAG: 6,
    EntityKind.PLAYLIST: 7,
}


@dataclass(frozen=True)
class SimilarityWeights:
    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")


@dataclass(frozen=True)
class ScoredResult:
    entity_id: str
    kind: EntityKind
    overall: float
    topical: float
    social: float

    def to_dict(self) -> dict:
        return {
            "id": self.entity_id,
            "kind": self.kind.value,
            "overall": self.overall,
            "topical": self.topical,
            "social": self.social,
        }


def overall_similarity(weights: SimilarityWeights, topical: float, social: float) -> float:
    if not (0.0 <= topical <= 1.0):
        raise OutOfRangeInputError(f"topical similarity {topical} outside [0, 1]")
    if not (0.0 <= social <= 1.0):
        raise OutOfRangeInputError(f"social similarity {social} outside [0, 1]")
    return (weights.alpha * topical + weights.beta * social) / (weights.alpha + weights.beta)


class SearchEngine:
    """Stateless reader over immutable snapshot + indexes."""

    def __init__(
        self,
        snapshot: GraphSnapshot,
        text_index: text.TextIndex,
        distance_index: distances.DistanceIndex,
        weights: SimilarityWeights = SimilarityWeights(),
    ):
        self.snapshot = snapshot
        self.text_index = text_index
        self.distance_index = distance_index
        self.weights = weights
        self._kinds = {
            eid: (KIND_ORDER[entity.kind], entity.kind)
            for eid, entity in snapshot.entities.items()
        }

    def search(
        self,
        searcher: str,
        query: str,
        limit: int = DEFAULT_SEARCH_LIMIT,
        kinds: Iterable[EntityKind] | None = None,
    ) -> list[ScoredResult]:
        allowed = set(self._check_kinds(kinds, SEARCH_KINDS))
        norm = self._check_query(searcher, query, limit)
        query_grams = text.qgrams(norm)
        query_items = sorted(text.query_vector(self.text_index, norm).items())
        row = distances.distance_row(self.distance_index, searcher)
        name_grams = self.text_index.name_grams
        vectors = self.text_index.vectors
        alpha, beta = self.weights.alpha, self.weights.beta
        total_weight = alpha + beta
        q_len = len(query_grams)

        scored = []
        for eid in text.candidates(self.text_index, norm):
            kind_rank, kind = self._kinds[eid]
            if kind not in allowed:
                continue
            grams = name_grams[eid]
            inter = len(query_grams & grams)
            union = q_len + len(grams) - inter
            partial = inter / union if union else 0.0
            exact = text.dot_sorted(query_items, vectors[eid])
            topical = (partial + exact) / 2.0
            social = distances.similarity_from_row(self.distance_index, row, searcher, eid)
            overall = (alpha * topical + beta * social) / total_weight
            scored.append((-overall, kind_rank, eid, topical, social))
        return self._materialize(scored, limit)

    def autocomplete(
        self, searcher: str, prefix: str, limit: int = DEFAULT_AUTOCOMPLETE_LIMIT
    ) -> list[ScoredResult]:
        norm = self._check_query(searcher, prefix, limit)
        query_grams = text.qgrams(norm)
        row = distances.distance_row(self.distance_index, searcher)
        name_grams = self.text_index.name_grams
        alpha, beta = self.weights.alpha, self.weights.beta
        total_weight = alpha + beta
        q_len = len(query_grams)
        allowed = set(AUTOCOMPLETE_KINDS)

        scored = []
        for eid in text.gram_candidates(self.text_index, norm):
            kind_rank, kind = self._kinds[eid]
            if kind not in allowed:
                continue
            grams = name_grams[eid]
            inter = len(query_grams & grams)
            union = q_len + len(grams) - inter
            topical = inter / union if union else 0.0
            social = distances.similarity_from_row(self.distance_index, row, searcher, eid)
            overall = (alpha * topical + beta * social) / total_weight
            scored.append((-overall, kind_rank, eid, topical, social))
        return self._materialize(scored, limit)

    def score_breakdown(self, searcher: str, query: str, entity_id: str) -> dict[str, float]:
        """Per-pair view of every similarity component, for inspection."""
        if not self.snapshot.has_entity(searcher):
            raise UnknownUserError(searcher)
        norm = text.normalize(query)
        if not norm:
            raise EmptyQueryError(query)
        partial = text.partial_similarity(norm, self.snapshot.entities[entity_id].name)
        exact = text.exact_similarity(self.text_index, norm, entity_id)
        topical = (partial + exact) / 2.0
        social = distances.user_similarity(self.distance_index, searcher, entity_id)
        return {
            "partial": partial,
            "exact": exact,
            "topical": topical,
            "social": social,
            "overall": overall_similarity(self.weights, topical, social),
        }

    def _check_query(self, searcher: str, query: str, limit: int) -> str:
        if not self.snapshot.has_entity(searcher):
            raise UnknownUserError(searcher)
        if limit < 1:
            raise ValueError("limit must be at least 1")
        norm = text.normalize(query)
        if not norm:
            raise EmptyQueryError(query)
        return norm

    @staticmethod
    def _check_kinds(
        kinds: Iterable[EntityKind] | None, allowed: tuple[EntityKind, ...]
    ) -> tuple[EntityKind, ...]:
        if kinds is None:
            return allowed
        chosen = tuple(kinds)
        for kind in chosen:
            if kind not in allowed:
                raise ValueError(f"kind {kind} is not searchable")
        return chosen

    def _materialize(self, scored: list[tuple], limit: int) -> list[ScoredResult]:
        scored.sort()
        return [
            ScoredResult(
                entity_id=eid,
                kind=self._kinds[eid][1],
                overall=-neg_overall,
                topical=topical,
                social=social,
            )
            for neg_overall, _, eid, topical, social in scored[:limit]
        ]
