"""Activity ledger and the two hybrid leaderboard designs.

Every action carries fixed points; deletes append a negated mirror that
touches only the deleting user. The absolute hybrid pins the active user
under the top ten; the 50-50 hybrid centers a band on them.
"""

from socialsearch import (
    ActionKind,
    ActivityLedger,
    Design,
    Entity,
    EntityKind,
    LeaderboardKind,
    SocialGraph,
    Window,
)

graph = SocialGraph()
for i in range(14):
    graph.add_entity(Entity(id=f"m{i:02d}", kind=EntityKind.USER, name=f"member {i}"))
graph.add_entity(Entity(id="algebra", kind=EntityKind.CONCEPT, name="linear algebra"))
graph.add_entity(Entity(id="notes", kind=EntityKind.SOURCE, name="lecture notes"))
graph.add_entity(Entity(id="q1", kind=EntityKind.POST, name="a question"))

ledger = ActivityLedger(graph)

# seed activity: member i contributes (14 - i) includes, so m00 leads
for i in range(14):
    for rep in range(14 - i):
        ledger.record_activity(f"m{i:02d}", ActionKind.INCLUDE, "algebra", "q1",
                               ts=1000.0 + i * 10 + rep)

added = ledger.record_activity("m13", ActionKind.SOURCE_ADD, "algebra", "notes", ts=2000.0)
print(f"m13 adds a source: +{added.points} points")
comment = ledger.record_activity("m12", ActionKind.SOURCE_COMMENT, "algebra", "notes", ts=2001.0)
ledger.record_activity("m05", ActionKind.SOURCE_UPVOTE_COMMENT, "algebra", "notes",
                       ts=2002.0, ref=comment.id)

mirror = ledger.record_delete(added.id, "m13", ts=2100.0)
print(f"m13 deletes it again: {mirror.points} (m12's comment points survive)\n")


def show(view):
    for row in view.rows:
        mark = "  <- you" if row.active else ""
        print(f"  #{row.rank:<3} {row.user:<6} {row.score:>6.1f}{mark}")


view = ledger.build_view(LeaderboardKind.TOP_CONTRIBUTOR, Window.ALL_TIME, now=3000.0,
                         active_user="m12", design=Design.HYBRID_ABSOLUTE, context="algebra")
print("top contributor, hybrid-absolute, active user m12:")
show(view)

view = ledger.build_view(LeaderboardKind.TOP_CONTRIBUTOR, Window.ALL_TIME, now=3000.0,
                         active_user="m08", design=Design.HYBRID_5050, context="algebra")
print("\ntop contributor, hybrid 50-50, active user m08:")
show(view)

view = ledger.build_view(LeaderboardKind.TOP_RESPONDER, Window.ALL_TIME, now=3000.0,
                         active_user="m12", design=Design.HYBRID_ABSOLUTE, context="algebra")
print("\ntop responder (comments weighted by received upvotes):")
show(view)
