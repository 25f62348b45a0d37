"""Text normalization, trigram partial matching, and tf-idf exact matching.

Partial match is the Jaccard overlap of padded character trigrams, which
tolerates single-character typos in short names. Exact match is the cosine
of tf-idf vectors over the union of an entity's text fields, with the name
weighted above tags and tags above everything else.

All floating-point accumulations iterate terms in sorted order so that an
independent scorer repeating the same definitions reproduces results
bit-for-bit.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import EmptyGraphError, UnknownIdError
from .graph import Entity, GraphSnapshot

GRAM_SIZE = 3
_PAD_START = "^^"
_PAD_END = "$$"
_NON_WORD = re.compile(r"[^\w]+", re.UNICODE)

NAME_WEIGHT = 3.0
TAGS_WEIGHT = 2.0
DEFAULT_WEIGHT = 1.0


def normalize(text: str) -> str:
    """Lowercase, turn punctuation into spaces, collapse whitespace, trim."""
    cleaned = _NON_WORD.sub(" ", text.lower()).replace("_", " ")
    return " ".join(cleaned.split())


def tokens(text: str) -> list[str]:
    return normalize(text).split()


def qgrams(text: str) -> frozenset[str]:
    """All padded trigrams of the normalized text; empty text gives no grams."""
    norm = normalize(text)
    if not norm:
        return frozenset()
    padded = _PAD_START + norm + _PAD_END
    return frozenset(padded[i : i + GRAM_SIZE] for i in range(len(padded) - GRAM_SIZE + 1))


def jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 0.0  # an empty query must never match
    return len(a & b) / len(a | b)


def partial_similarity(query: str, name: str) -> float:
    return jaccard(qgrams(query), qgrams(name))


def field_union(entity: Entity) -> list[tuple[str, float]]:
    """The entity's text fields with their importance weights, in fixed order."""
    parts = [(entity.name, NAME_WEIGHT)]
    if entity.description:
        parts.append((entity.description, DEFAULT_WEIGHT))
    for label in sorted(entity.fields):
        weight = TAGS_WEIGHT if label == "tags" else DEFAULT_WEIGHT
        parts.append((entity.fields[label], weight))
    return parts


@dataclass(frozen=True)
class TextIndex:
    """Immutable after build; rebuilt whenever the snapshot is swapped."""

    size: int
    idf: dict[str, float]
    vectors: dict[str, dict[str, float]]  # entity -> unit-normalized tf-idf weights
    name_grams: dict[str, frozenset[str]]
    gram_index: dict[str, set[str]]  # name trigram -> entity ids
    token_index: dict[str, set[str]]  # field-union token -> entity ids


def _term_frequencies(entity: Entity) -> dict[str, float]:
    tf: dict[str, float] = {}
    for text, weight in field_union(entity):
        for token in tokens(text):
            tf[token] = tf.get(token, 0.0) + weight
    return tf


def _normalized(weights: dict[str, float]) -> dict[str, float]:
    norm_sq = 0.0
    for term in sorted(weights):
        norm_sq += weights[term] * weights[term]
    if norm_sq == 0.0:
        return {}
    norm = math.sqrt(norm_sq)
    return {term: weights[term] / norm for term in sorted(weights)}


def build_text_index(snapshot: GraphSnapshot) -> TextIndex:
    if not snapshot.entities:
        raise EmptyGraphError("cannot index an empty graph")
    ids = sorted(snapshot.entities)
    n = len(ids)

    tf_by_entity: dict[str, dict[str, float]] = {}
    df: dict[str, int] = {}
    for eid in ids:
        tf = _term_frequencies(snapshot.entities[eid])
        tf_by_entity[eid] = tf
        for term in tf:
            df[term] = df.get(term, 0) + 1

    idf = {term: math.log(n / df[term]) for term in sorted(df)}

    vectors: dict[str, dict[str, float]] = {}
    name_grams: dict[str, frozenset[str]] = {}
    gram_index: dict[str, set[str]] = {}
    token_index: dict[str, set[str]] = {}
    for eid in ids:
        weights = {}
        for term, tf in tf_by_entity[eid].items():
            w = tf * idf[term]
            if w > 0.0:
                weights[term] = w
        vectors[eid] = _normalized(weights)

        grams = qgrams(snapshot.entities[eid].name)
        name_grams[eid] = grams
        for gram in grams:
            gram_index.setdefault(gram, set()).add(eid)
        for term in tf_by_entity[eid]:
            token_index.setdefault(term, set()).add(eid)

    return TextIndex(
        size=n,
        idf=idf,
        vectors=vectors,
        name_grams=name_grams,
        gram_index=gram_index,
        token_index=token_index,
    )


def query_vector(index: TextIndex, query: str) -> dict[str, float]:
    """Unit tf-idf vector of the query; unseen terms drop out."""
    tf: dict[str, float] = {}
    for token in tokens(query):
        tf[token] = tf.get(token, 0.0) + 1.0
    weights = {}
    for term, count in tf.items():
        idf = index.idf.get(term, 0.0)
        if idf > 0.0:
            weights[term] = count * idf
    return _normalized(weights)


def cosine(query_vec: dict[str, float], entity_vec: dict[str, float]) -> float:
    if not query_vec or not entity_vec:
        return 0.0
    dot = 0.0
    for term in sorted(query_vec):
        weight = entity_vec.get(term)
        if weight is not None:
            dot += query_vec[term] * weight
    return min(1.0, max(0.0, dot))


def dot_sorted(query_items: list[tuple[str, float]], entity_vec: dict[str, float]) -> float:
    """cosine() over pre-sorted (term, weight) pairs, skipping the re-sort."""
    if not query_items or not entity_vec:
        return 0.0
    dot = 0.0
    for term, weight in query_items:
        other = entity_vec.get(term)
        if other is not None:
            dot += weight * other
    return min(1.0, max(0.0, dot))


def exact_similarity(index: TextIndex, query: str, entity_id: str) -> float:
    if entity_id not in index.vectors:
        raise UnknownIdError(entity_id)
    return cosine(query_vector(index, query), index.vectors[entity_id])


def gram_candidates(index: TextIndex, query: str) -> set[str]:
    """Entities whose name shares at least one trigram with the query."""
    found: set[str] = set()
    for gram in qgrams(query):
        postings = index.gram_index.get(gram)
        if postings:
            found |= postings
    return found


def candidates(index: TextIndex, query: str) -> set[str]:
    """Entities sharing a name trigram or a field-union token with the query."""
    found = gram_candidates(index, query)
    for token in tokens(query):
        postings = index.token_index.get(token)
        if postings:
            found |= postings
    return found
