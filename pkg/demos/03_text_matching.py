"""The two text-matching routes: trigram overlap and tf-idf cosine.

Trigram overlap survives typos; the vector-space route finds matches in
fields beyond the name (affiliations, instructions, tags).
"""

from socialsearch import (
    Entity,
    EntityKind,
    SocialGraph,
    build_text_index,
    exact_similarity,
    normalize,
    partial_similarity,
    qgrams,
)

print("normalize('Vittorio  Carmignani!') ->", repr(normalize("Vittorio  Carmignani!")))
print("qgrams('pca') ->", sorted(qgrams("pca")))

print("\ntypo tolerance via trigram overlap:")
for query in ("vittorio carmignani", "vittorio karmignani", "vittoria carmignany", "unrelated"):
    score = partial_similarity(query, "Vittorio Carmignani")
    print(f"  {query!r:<26} -> {score:.3f}")

graph = SocialGraph()
graph.add_entity(Entity(id="u1", kind=EntityKind.USER, name="Nora Quist",
                        fields={"affiliation": "dtu"}))
graph.add_entity(Entity(id="u2", kind=EntityKind.USER, name="Sven Petrov"))
graph.add_entity(Entity(id="s1", kind=EntityKind.SOURCE, name="linear algebra primer",
                        fields={"tags": "#matrices"}))
index = build_text_index(graph.snapshot())

print("\nfield-union matches beyond the name:")
print("  'dtu' vs Nora Quist      ->", f"{exact_similarity(index, 'dtu', 'u1'):.3f}",
      "(affiliation field)")
print("  'dtu' vs Sven Petrov     ->", f"{exact_similarity(index, 'dtu', 'u2'):.3f}")
print("  'matrices' vs the primer ->", f"{exact_similarity(index, 'matrices', 's1'):.3f}",
      "(tags field)")
