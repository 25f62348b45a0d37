from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socialsearch.errors import EmptyGraphError, UnknownIdError
from socialsearch.graph import SocialGraph
from socialsearch.text import (
    build_text_index,
    candidates,
    cosine,
    exact_similarity,
    field_union,
    normalize,
    partial_similarity,
    qgrams,
    query_vector,
    tokens,
)

from helpers import build_graph, concept, random_graph, user


def enumerate_grams(text_value: str) -> set[str]:
    """Alternative trigram enumeration used as the hand oracle."""
    norm = normalize(text_value)
    if not norm:
        return set()
    padded = "^^" + norm + "$$"
    return set(map("".join, zip(padded, padded[1:], padded[2:])))


def test_normalize_rules():
    assert normalize("Vittorio  Carmignani!") == "vittorio carmignani"
    assert normalize("") == ""
    assert normalize("  A--b_c  ") == "a b c"


@given(st.text(max_size=60))
@settings(max_examples=200, deadline=None)
def test_normalize_idempotent(text_value):
    once = normalize(text_value)
    assert normalize(once) == once


def test_qgrams_hand_enumerated_pairs():
    assert qgrams("ab") == {"^^a", "^ab", "ab$", "b$$"}
    assert qgrams("") == frozenset()
    assert qgrams("pca") == {"^^p", "^pc", "pca", "ca$", "a$$"}
    assert len(qgrams("pca")) == 5


@given(st.text(max_size=40))
@settings(max_examples=200, deadline=None)
def test_qgrams_match_alternative_enumeration(text_value):
    assert set(qgrams(text_value)) == enumerate_grams(text_value)
    assert all(len(g) == 3 for g in qgrams(text_value))


def test_partial_similarity_identity_and_disjoint():
    assert partial_similarity("pca", "pca") == 1.0
    assert partial_similarity("ab", "cd") == 0.0
    assert partial_similarity("", "") == 0.0
    assert partial_similarity("", "abc") == 0.0


def test_partial_similarity_typo_tolerance():
    a, b = "vittorio karmignani", "vittorio carmignani"
    expected = len(enumerate_grams(a) & enumerate_grams(b)) / len(
        enumerate_grams(a) | enumerate_grams(b)
    )
    assert partial_similarity(a, b) == expected
    assert partial_similarity(a, b) > 0.6


@given(st.text(max_size=30), st.text(max_size=30))
@settings(max_examples=200, deadline=None)
def test_partial_similarity_symmetric_bounded(a, b):
    s = partial_similarity(a, b)
    assert s == partial_similarity(b, a)
    assert 0.0 <= s <= 1.0
    if qgrams(a) or qgrams(b):
        assert (s == 1.0) == (qgrams(a) == qgrams(b))


def test_build_text_index_rejects_empty_graph():
    with pytest.raises(EmptyGraphError):
        build_text_index(SocialGraph().snapshot())


def test_single_entity_corpus_zeroes_out():
    graph = build_graph([concept("c1", "alpha")])
    index = build_text_index(graph.snapshot())
    assert index.vectors["c1"] == {}
    assert exact_similarity(index, "alpha", "c1") == 0.0


def test_unique_term_weights_one_entity_only():
    graph = build_graph([concept("c1", "alpha beta"), concept("c2", "alpha gamma")])
    index = build_text_index(graph.snapshot())
    assert index.vectors["c1"].get("beta", 0.0) > 0.0
    assert "beta" not in index.vectors["c2"]
    # "alpha" appears in every entity, so its idf (and weight) is zero
    assert "alpha" not in index.vectors["c1"]


def test_exact_similarity_coinciding_vectors():
    graph = build_graph([concept("c1", "alpha beta"), concept("c2", "other words")])
    index = build_text_index(graph.snapshot())
    assert exact_similarity(index, "alpha beta", "c1") == 1.0
    assert exact_similarity(index, "alpha beta", "c2") == 0.0


def test_exact_similarity_unknown_terms_and_entity():
    graph = build_graph([concept("c1", "alpha"), concept("c2", "beta")])
    index = build_text_index(graph.snapshot())
    assert exact_similarity(index, "zzz qqq", "c1") == 0.0
    with pytest.raises(UnknownIdError):
        exact_similarity(index, "alpha", "ghost")


def test_field_match_beyond_name():
    # entity whose affiliation mentions the query, name does not
    graph = build_graph(
        [
            user("u1", "ann droste", fields={"affiliation": "dtu"}),
            user("u2", "bob keller"),
            concept("c1", "compression"),
        ]
    )
    index = build_text_index(graph.snapshot())
    assert exact_similarity(index, "dtu", "u1") > 0.0
    assert "u1" in candidates(index, "dtu")


def test_cosine_scale_invariance():
    # scaling both raw weight maps by the same positive constant changes
    # nothing once vectors are normalized to unit length
    from socialsearch.text import _normalized

    q = {"a": 0.6, "b": 0.8, "c": 0.1}
    e = {"a": 0.8, "b": 0.6}
    base = cosine(_normalized(q), _normalized(e))
    for scale in (2.0, 0.5, 64.0):
        scaled_q = _normalized({t: w * scale for t, w in q.items()})
        scaled_e = _normalized({t: w * scale for t, w in e.items()})
        assert cosine(scaled_q, scaled_e) == base


def test_query_vector_is_unit_length():
    graph = build_graph([concept("c1", "alpha beta"), concept("c2", "gamma delta")])
    index = build_text_index(graph.snapshot())
    vec = query_vector(index, "alpha gamma gamma")
    assert vec
    assert abs(sum(w * w for w in vec.values()) - 1.0) < 1e-12


def test_inverted_index_completeness_vs_linear_scan():
    import random

    rng = random.Random(11)
    graph = random_graph(rng, 300)
    snapshot = graph.snapshot()
    index = build_text_index(snapshot)
    for query in ("alpha", "kernel matrix", "regressio", "zeta"):
        got = candidates(index, query)
        expected = set()
        q_grams = qgrams(query)
        q_tokens = set(tokens(query))
        for eid, entity in snapshot.entities.items():
            grams = qgrams(entity.name)
            union_tokens = set()
            for part, _ in field_union(entity):
                union_tokens.update(tokens(part))
            if q_grams & grams or q_tokens & union_tokens:
                expected.add(eid)
        assert got == expected


def test_index_build_at_scale(paper_dataset):
    graph = SocialGraph()
    graph.ingest(paper_dataset)
    index = build_text_index(graph.snapshot())
    assert index.size == graph.entity_count
