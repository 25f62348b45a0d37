"""Pre-typing suggestions: personal recency plus windowed popularity.

The list has two halves: the searcher's own latest queries, then what the
whole community issued most often inside the trailing week. Popularity
outside the window is ignored, so last month's fad loses to today's topic.
"""

from socialsearch import Entity, EntityKind, SocialGraph, Suggester

DAY = 86400.0
NOW = 10_000_000.0

graph = SocialGraph()
for uid in ("ada", "bo", "cy", "dee"):
    graph.add_entity(Entity(id=uid, kind=EntityKind.USER, name=uid.title()))

s = Suggester(graph, window_days=7.0)

# ada's own history, newest last
for i, q in enumerate(["eigenvalues", "pagerank", "markov chains", "pca", "spectral clustering", "svd"]):
    s.log_query("ada", q, ts=NOW - (6 - i) * DAY / 2)

# an old craze: hammered a month ago, silent since
for i in range(40):
    s.log_query("bo", "exam answers", ts=NOW - 30 * DAY - i)

# a current topic, only a handful of hits but all this week
for i in range(6):
    s.log_query("cy", "gradient descent", ts=NOW - i * DAY / 3)
s.log_query("dee", "gradient descent", ts=NOW - DAY, clicked=None)

print("suggestions for ada before typing anything:")
for item in s.suggest("ada", now=NOW):
    label = item.text if item.kind == "query" else f"[entity {item.entity}]"
    print(f"  {item.source:<9} {label:<22} score={item.score:.0f}")

print("\n'exam answers' had 40 hits but all outside the window; "
      "'gradient descent' wins with 7 recent ones")
