"""Landmark distance tables: cheap upper-bound hop distances.

Each landmark stores a breadth-first ball truncated at three hops; a pair
distance is the best two-leg route through any landmark, so it can
overestimate but never undershoot, and anything past three hops counts as
socially irrelevant (similarity zero).
"""

from socialsearch import (
    Edge,
    Entity,
    EntityKind,
    SocialGraph,
    approx_distance,
    build_distance_index,
    compression_report,
    user_similarity,
)

# a chain of seven members: m0 - m1 - ... - m6
graph = SocialGraph()
for i in range(7):
    graph.add_entity(Entity(id=f"m{i}", kind=EntityKind.USER, name=f"member {i}"))
for i in range(6):
    graph.add_edge(Edge(src=f"m{i}", dst=f"m{i+1}", relation="includes"))

snapshot = graph.snapshot()
index = build_distance_index(snapshot, k=7)  # every node a landmark

print("pair        approx   similarity")
for other in range(7):
    d = approx_distance(index, "m0", f"m{other}")
    s = user_similarity(index, "m0", f"m{other}")
    print(f"m0 -> m{other}    {str(d):>6}   {s:10.2f}")

report = compression_report(index)
print(f"\nstored {report.stored_pairs} of {report.total_pairs} landmark-node pairs "
      f"(saving {report.saving_ratio:.0%}): distances past 3 hops are dropped")
