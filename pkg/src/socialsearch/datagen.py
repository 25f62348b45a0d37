"""Seeded synthetic social graphs with hub-heavy degree distributions.

Node kinds follow a fixed mix (users dominate), names come from seeded
word lists, and edges attach preferentially so a few hubs accumulate most
of the degree, which is what both real social graphs and the landmark
selection stress case look like. Output is a pure function of the seed
and the requested counts.
"""

from __future__ import annotations

import random
from pathlib import Path

from .errors import InfeasibleCountsError
from .graph import Edge, Entity, EntityKind, write_ingest_file

KIND_MIX = (
    (EntityKind.USER, 0.40),
    (EntityKind.POST, 0.20),
    (EntityKind.SOURCE, 0.15),
    (EntityKind.CONCEPT, 0.15),
    (EntityKind.COURSE, 0.08),
    (EntityKind.ORIGIN, 0.008),
    (EntityKind.TAG, 0.006),
    (EntityKind.PLAYLIST, 0.006),
)

FIRST_NAMES = (
    "ada", "alan", "carla", "dana", "elena", "felix", "grace", "hugo", "ines", "jonas",
    "karin", "lars", "mara", "nils", "olga", "pablo", "rosa", "sven", "tara", "viktor",
    "wanda", "yann", "zoe", "bruno", "clara", "diego", "emma", "franz", "gita", "heidi",
)
LAST_NAMES = (
    "almeida", "berger", "costa", "dahl", "eriksen", "fischer", "gruber", "hansen",
    "ivanov", "jensen", "keller", "larsen", "moreno", "nagy", "olsen", "petrov",
    "quist", "rossi", "schmidt", "tanaka", "ullman", "vogel", "weber", "xu", "yilmaz", "zhang",
)
TOPIC_WORDS = (
    "algebra", "bayesian", "calculus", "clustering", "compression", "databases",
    "eigenvalues", "entropy", "gradients", "graphs", "hashing", "indexing",
    "kernels", "lambda", "matrices", "networks", "optimization", "parsing",
    "probability", "queues", "recursion", "regression", "sampling", "scheduling",
    "sorting", "spectral", "statistics", "tensors", "topology", "vectors",
)
INSTITUTIONS = (
    "north valley institute", "harbor university", "summit college",
    "riverside polytechnic", "lakeside academy", "central technical school",
)
LEARNING_STYLES = ("watching", "reading", "practice", "listening", "group", "tutorial")

RELATION_BY_KINDS = {
    (EntityKind.USER, EntityKind.USER): "includes",
    (EntityKind.USER, EntityKind.CONCEPT): "includes",
    (EntityKind.USER, EntityKind.COURSE): "includes",
    (EntityKind.USER, EntityKind.POST): "authored",
    (EntityKind.USER, EntityKind.SOURCE): "shared",
    (EntityKind.USER, EntityKind.PLAYLIST): "curates",
    (EntityKind.POST, EntityKind.CONCEPT): "posted_in",
    (EntityKind.POST, EntityKind.COURSE): "posted_in",
    (EntityKind.POST, EntityKind.TAG): "tagged_with",
    (EntityKind.SOURCE, EntityKind.CONCEPT): "teaches",
    (EntityKind.SOURCE, EntityKind.COURSE): "teaches",
    (EntityKind.SOURCE, EntityKind.TAG): "tagged_with",
    (EntityKind.COURSE, EntityKind.ORIGIN): "offered_by",
    (EntityKind.USER, EntityKind.ORIGIN): "affiliated_with",
    (EntityKind.PLAYLIST, EntityKind.SOURCE): "collects",
    (EntityKind.CONCEPT, EntityKind.CONCEPT): "prerequisite_of",
}

_BASE_TS = 1_600_000_000  # fixed epoch so output is reproducible


def _kind_counts(total: int) -> dict[EntityKind, int]:
    """Largest-remainder allocation so counts sum exactly to total."""
    raw = [(kind, total * share) for kind, share in KIND_MIX]
    counts = {kind: int(value) for kind, value in raw}
    remainder = total - sum(counts.values())
    by_fraction = sorted(raw, key=lambda kv: -(kv[1] - int(kv[1])))
    for kind, _ in by_fraction[:remainder]:
        counts[kind] += 1
    return counts


def _make_entity(kind: EntityKind, index: int, rng: random.Random) -> Entity:
    eid = f"{kind.value}-{index:04d}"
    ts = float(_BASE_TS + index * 60)
    if kind is EntityKind.USER:
        name = f"{rng.choice(FIRST_NAMES)} {rng.choice(LAST_NAMES)}".title()
        return Entity(
            id=eid, kind=kind, name=name,
            description=f"learner interested in {rng.choice(TOPIC_WORDS)}",
            fields={"affiliation": rng.choice(INSTITUTIONS)},
            created_at=ts,
        )
    if kind is EntityKind.CONCEPT:
        name = f"{rng.choice(TOPIC_WORDS)} {rng.choice(TOPIC_WORDS)}"
        return Entity(
            id=eid, kind=kind, name=name,
            description=f"notes and sources about {name}",
            created_at=ts,
        )
    if kind is EntityKind.COURSE:
        name = f"{rng.choice(TOPIC_WORDS)} {rng.randint(101, 499)}"
        return Entity(
            id=eid, kind=kind, name=name,
            description=f"course on {rng.choice(TOPIC_WORDS)}",
            fields={"institution": rng.choice(INSTITUTIONS), "tags": f"#{rng.choice(TOPIC_WORDS)}"},
            created_at=ts,
        )
    if kind is EntityKind.SOURCE:
        topic = rng.choice(TOPIC_WORDS)
        return Entity(
            id=eid, kind=kind, name=f"{topic} {rng.choice(('primer', 'handbook', 'lectures', 'exercises'))}",
            description=f"open material covering {topic}",
            fields={"instructions": f"start with the {rng.choice(('intro', 'examples', 'summary'))}",
                    "level": rng.choice(LEARNING_STYLES)},
            created_at=ts,
        )
    if kind is EntityKind.POST:
        return Entity(
            id=eid, kind=kind,
            name=f"question about {rng.choice(TOPIC_WORDS)} {rng.choice(TOPIC_WORDS)}",
            description=f"can someone explain {rng.choice(TOPIC_WORDS)}?",
            created_at=ts,
        )
    if kind is EntityKind.ORIGIN:
        return Entity(id=eid, kind=kind, name=rng.choice(INSTITUTIONS).title(), created_at=ts)
    if kind is EntityKind.TAG:
        return Entity(id=eid, kind=kind, name=f"#{rng.choice(TOPIC_WORDS)}", created_at=ts)
    return Entity(id=eid, kind=kind, name=f"{rng.choice(FIRST_NAMES)}'s picks", created_at=ts)


def generate(seed: int, entities: int, relationships: int) -> tuple[list[Entity], list[Edge]]:
    if entities < 1 or relationships < 0:
        raise InfeasibleCountsError(f"bad counts ({entities}, {relationships})")
    max_edges = entities * (entities - 1) // 2
    if relationships > max_edges:
        raise InfeasibleCountsError(
            f"{relationships} edges impossible for {entities} entities (max {max_edges})"
        )
    rng = random.Random(seed)

    nodes: list[Entity] = []
    index = 0
    for kind, count in _kind_counts(entities).items():
        for _ in range(count):
            index += 1
            nodes.append(_make_entity(kind, index, rng))
    rng.shuffle(nodes)

    edges: list[Edge] = []
    seen: set[tuple[str, str]] = set()
    attachment: list[int] = [0]  # node indexes, repeated once per incident edge

    def add_edge(a: int, b: int) -> bool:
        key = (nodes[a].id, nodes[b].id) if nodes[a].id < nodes[b].id else (nodes[b].id, nodes[a].id)
        if a == b or key in seen:
            return False
        seen.add(key)
        src, dst = nodes[a], nodes[b]
        relation = RELATION_BY_KINDS.get((src.kind, dst.kind))
        if relation is None:
            relation = RELATION_BY_KINDS.get((dst.kind, src.kind))
            if relation is not None:
                src, dst = dst, src
            else:
                relation = "linked"
        edges.append(
            Edge(src=src.id, dst=dst.id, relation=relation,
                 created_at=float(_BASE_TS + len(edges) * 30))
        )
        attachment.extend((a, b))
        return True

    # spanning backbone: each new node attaches preferentially to an earlier one
    backbone = min(relationships, len(nodes) - 1)
    for i in range(1, backbone + 1):
        add_edge(i, rng.choice(attachment))

    while len(edges) < relationships:
        a = rng.choice(attachment)
        b = rng.choice(attachment) if rng.random() < 0.8 else rng.randrange(len(nodes))
        add_edge(a, b)

    return nodes, edges


def generate_dataset(seed: int, entities: int, relationships: int, out: str | Path) -> dict[str, int]:
    """Write an ingest file at the requested scale; deterministic per seed."""
    nodes, edges = generate(seed, entities, relationships)
    write_ingest_file(out, nodes, edges)
    return {"entities": len(nodes), "edges": len(edges)}
