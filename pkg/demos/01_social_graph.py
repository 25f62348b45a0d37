"""Build a small k-partite social graph and poke at its structure.

Entities of eight kinds live in one store; edges are directed and labeled,
while neighborhood queries see the undirected projection.
"""

from socialsearch import Edge, Entity, EntityKind, SocialGraph

graph = SocialGraph()

graph.add_entity(Entity(id="ada", kind=EntityKind.USER, name="Ada Keller",
                        fields={"affiliation": "harbor university"}))
graph.add_entity(Entity(id="bo", kind=EntityKind.USER, name="Bo Larsen"))
graph.add_entity(Entity(id="ml", kind=EntityKind.COURSE, name="Machine Learning 101"))
graph.add_entity(Entity(id="pca", kind=EntityKind.CONCEPT, name="PCA",
                        description="principal component analysis"))
graph.add_entity(Entity(id="vid", kind=EntityKind.SOURCE, name="pca lecture video",
                        fields={"instructions": "watch the first half"}))

graph.add_edge(Edge(src="ada", dst="bo", relation="includes"))
graph.add_edge(Edge(src="ada", dst="ml", relation="includes"))
graph.add_edge(Edge(src="bo", dst="pca", relation="includes"))
graph.add_edge(Edge(src="pca", dst="vid", relation="teaches"))

print(f"{graph.entity_count} entities, {graph.edge_count} edges")
print("ada's neighborhood:", graph.neighbors("ada"))
print("pca's neighborhood:", graph.neighbors("pca"))

snapshot = graph.snapshot()
print("\nsnapshot adjacency is symmetric:")
for node, neighbors in sorted(snapshot.adjacency.items()):
    print(f"  {node:>4} -> {list(neighbors)}")
