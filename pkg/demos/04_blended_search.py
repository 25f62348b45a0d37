"""Socially-ranked search: same text, different searcher, different order.

Overall score = (topical + social) / 2 by default. Two concepts with
identical names separate purely on graph proximity to whoever is asking.
"""

from socialsearch import (
    Edge,
    Entity,
    EntityKind,
    SearchEngine,
    SimilarityWeights,
    SocialGraph,
    build_distance_index,
    build_text_index,
)

graph = SocialGraph()
graph.add_entity(Entity(id="ann", kind=EntityKind.USER, name="Ann Weber"))
graph.add_entity(Entity(id="raj", kind=EntityKind.USER, name="Raj Nagy"))
graph.add_entity(Entity(id="g1", kind=EntityKind.CONCEPT, name="graph theory"))
graph.add_entity(Entity(id="g2", kind=EntityKind.CONCEPT, name="graph theory"))
graph.add_entity(Entity(id="post", kind=EntityKind.POST, name="question on graph theory"))
graph.add_edge(Edge(src="ann", dst="g1", relation="includes"))
graph.add_edge(Edge(src="raj", dst="g2", relation="includes"))
graph.add_edge(Edge(src="g2", dst="post", relation="posted_in"))

snapshot = graph.snapshot()
engine = SearchEngine(
    snapshot,
    build_text_index(snapshot),
    build_distance_index(snapshot),
    SimilarityWeights(alpha=1.0, beta=1.0),
)

for searcher in ("ann", "raj"):
    print(f"\nsearch('graph theory') as {searcher}:")
    for r in engine.search(searcher, "graph theory"):
        print(f"  {r.entity_id:<5} {r.kind.value:<8} S={r.overall:.3f} "
              f"(topical {r.topical:.3f}, social {r.social:.2f})")

print("\nautocomplete('gra') as ann (users/concepts/courses only):")
for r in engine.autocomplete("ann", "gra"):
    print(f"  {r.entity_id:<5} {r.kind.value:<8} S={r.overall:.3f}")
