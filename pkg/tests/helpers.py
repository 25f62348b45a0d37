"""Fixture builders: hand-written graphs and seeded random corpora."""

from __future__ import annotations

import random

from socialsearch.graph import Edge, Entity, EntityKind, SocialGraph

WORDS = (
    "alpha", "beta", "gamma", "delta", "epsilon", "sigma", "kernel", "matrix",
    "vector", "tensor", "graph", "query", "index", "stream", "course", "linear",
    "regression", "cluster", "entropy", "theorem", "proof", "lemma", "sample",
)

FIELD_LABELS = ("affiliation", "tags", "instructions", "level")


def build_graph(entities: list[Entity], edges: list[tuple[str, str]] | None = None) -> SocialGraph:
    graph = SocialGraph()
    for entity in entities:
        graph.add_entity(entity)
    for i, (src, dst) in enumerate(edges or []):
        graph.add_edge(Edge(src=src, dst=dst, relation="linked", created_at=float(i)))
    return graph


def user(eid: str, name: str, **kwargs) -> Entity:
    return Entity(id=eid, kind=EntityKind.USER, name=name, **kwargs)


def concept(eid: str, name: str, **kwargs) -> Entity:
    return Entity(id=eid, kind=EntityKind.CONCEPT, name=name, **kwargs)


def random_graph(rng: random.Random, size: int, avg_degree: float = 3.0) -> SocialGraph:
    """Random corpus: overlapping names, mixed kinds, random simple edges."""
    kinds = list(EntityKind)
    entities = []
    for i in range(size):
        kind = EntityKind.USER if i == 0 else rng.choice(kinds)
        name = " ".join(rng.choice(WORDS) for _ in range(rng.randint(1, 3)))
        fields = {}
        if rng.random() < 0.3:
            fields[rng.choice(FIELD_LABELS)] = rng.choice(WORDS)
        entities.append(
            Entity(
                id=f"n{i:04d}",
                kind=kind,
                name=name,
                description=" ".join(rng.choice(WORDS) for _ in range(rng.randint(0, 4))),
                fields=fields,
                created_at=float(i),
            )
        )
    graph = build_graph(entities)
    target_edges = min(int(size * avg_degree / 2), size * (size - 1) // 2)
    seen = set()
    guard = 0
    while len(seen) < target_edges and guard < target_edges * 20:
        guard += 1
        a, b = rng.randrange(size), rng.randrange(size)
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        if key in seen:
            continue
        seen.add(key)
        graph.add_edge(
            Edge(src=f"n{a:04d}", dst=f"n{b:04d}", relation="linked", created_at=float(guard))
        )
    return graph


def random_queries(rng: random.Random, graph: SocialGraph, count: int = 3) -> list[str]:
    """Names, prefixes and single-character typos drawn from the corpus."""
    names = sorted({e.name for e in graph.snapshot().entities.values()})
    queries = []
    for _ in range(count):
        name = rng.choice(names)
        roll = rng.random()
        if roll < 0.34:
            queries.append(name)
        elif roll < 0.67:
            queries.append(name[: rng.randint(1, max(1, min(5, len(name))))])
        else:
            i = rng.randrange(len(name))
            queries.append(name[:i] + rng.choice("abcdefghijklmnopqrstuvwxyz") + name[i + 1 :])
    return [q for q in queries if q.strip()] or ["alpha"]


def pick_user(rng: random.Random, graph: SocialGraph) -> str:
    users = sorted(
        e.id for e in graph.snapshot().entities.values() if e.kind is EntityKind.USER
    )
    return rng.choice(users)
