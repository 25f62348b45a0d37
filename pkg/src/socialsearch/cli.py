"""Command-line entry point wrapping every library operation.

Human-readable tables by default; ``--json`` switches any subcommand to
structured output. Exit codes: 0 success, 1 domain error (machine-readable
JSON on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import signal
import sys
import threading
import time

from . import bench as bench_mod
from . import datagen, distances, text
from .engine import SearchEngine, SimilarityWeights
from .errors import NoDataError, SocialSearchError
from .graph import EntityKind, SocialGraph
from .leaderboard import ActivityLedger, Design, LeaderboardKind, Window
from .service import ENDPOINTS, ServiceConfig, serve
from .suggest import QueryLog, Suggester


def _load_graph(path: str) -> SocialGraph:
    graph = SocialGraph()
    graph.ingest(path)
    return graph


def _build_engine(args) -> SearchEngine:
    graph = _load_graph(args.data)
    snapshot = graph.snapshot()
    return SearchEngine(
        snapshot,
        text.build_text_index(snapshot),
        distances.build_distance_index(snapshot, getattr(args, "landmarks", None) or None),
        SimilarityWeights(args.alpha, args.beta),
    )


def _print_results(engine: SearchEngine, results, as_json: bool) -> None:
    if as_json:
        print(json.dumps([r.to_dict() for r in results], indent=2))
        return
    print(f"{'#':>3}  {'id':<18} {'kind':<9} {'S':>8} {'S_T':>8} {'S_U':>8}  name")
    for i, result in enumerate(results, 1):
        name = engine.snapshot.entities[result.entity_id].name
        print(
            f"{i:>3}  {result.entity_id:<18} {result.kind.value:<9} "
            f"{result.overall:>8.4f} {result.topical:>8.4f} {result.social:>8.4f}  {name}"
        )


def cmd_ingest(args) -> int:
    graph = _load_graph(args.data)
    counts = {"entities": graph.entity_count, "edges": graph.edge_count}
    print(json.dumps(counts) if args.json else f"loaded {counts['entities']} entities, {counts['edges']} edges")
    return 0


def cmd_index_build(args) -> int:
    graph = _load_graph(args.data)
    snapshot = graph.snapshot()
    started = time.perf_counter()
    index = distances.build_distance_index(snapshot, args.landmarks or None)
    elapsed = time.perf_counter() - started
    report = distances.compression_report(index)
    payload = {"landmarks": len(index.landmarks), "build_s": round(elapsed, 3), **report.to_dict()}
    print(json.dumps(payload) if args.json else
          f"{payload['landmarks']} landmarks, {report.stored_pairs}/{report.total_pairs} pairs stored "
          f"(saving {report.saving_ratio:.1%}), built in {elapsed:.2f}s")
    return 0


def cmd_index_report(args) -> int:
    graph = _load_graph(args.data)
    index = distances.build_distance_index(graph.snapshot(), args.landmarks or None)
    print(json.dumps(distances.compression_report(index).to_dict()))
    return 0


def cmd_search(args) -> int:
    engine = _build_engine(args)
    kinds = [EntityKind(k) for k in args.kinds.split(",")] if args.kinds else None
    _print_results(engine, engine.search(args.user, args.q, args.limit, kinds), args.json)
    return 0


def cmd_qac(args) -> int:
    engine = _build_engine(args)
    _print_results(engine, engine.autocomplete(args.user, args.q, args.limit), args.json)
    return 0


def cmd_qs(args) -> int:
    graph = _load_graph(args.data)
    suggester = Suggester(graph.snapshot(), QueryLog(args.querylog), window_days=args.window_days)
    suggestions = suggester.suggest(args.user, args.now if args.now is not None else time.time())
    if args.json:
        print(json.dumps([s.to_dict() for s in suggestions], indent=2))
    else:
        for s in suggestions:
            label = s.text if s.kind == "query" else f"[entity] {s.entity}"
            print(f"{s.source:<9} {label}")
    return 0


def cmd_activity_record(args) -> int:
    graph = _load_graph(args.data)
    ledger = ActivityLedger(graph, args.ledger)
    activity = ledger.record_activity(
        actor=args.actor, action=args.action, location=args.location,
        object_id=args.object, ts=args.ts if args.ts is not None else time.time(),
        ref=args.ref,
    )
    print(json.dumps(activity.to_dict()) if args.json else
          f"recorded #{activity.id}: {activity.actor} {activity.action.value} -> {activity.points:+.1f}")
    return 0


def cmd_activity_delete(args) -> int:
    graph = _load_graph(args.data)
    ledger = ActivityLedger(graph, args.ledger)
    mirror = ledger.record_delete(args.activity, args.actor, args.ts if args.ts is not None else time.time())
    print(json.dumps(mirror.to_dict()) if args.json else
          f"recorded #{mirror.id}: delete of #{mirror.ref} -> {mirror.points:+.1f}")
    return 0


def cmd_leaderboard_show(args) -> int:
    graph = _load_graph(args.data)
    ledger = ActivityLedger(graph, args.ledger)
    view = ledger.build_view(
        kind=LeaderboardKind(args.kind),
        window=Window(args.window),
        now=args.now if args.now is not None else time.time(),
        active_user=args.user,
        design=Design(args.design),
        context=None if args.context in (None, "all") else args.context,
    )
    if not args.json:
        print(f"{'rank':>4}  {'user':<18} {'score':>8}")
        for row in view.rows:
            marker = " *" if row.active else ""
            print(f"{row.rank:>4}  {row.user:<18} {row.score:>8.1f}{marker}")
    print(json.dumps(view.to_dict(), indent=None if args.json else 2))
    return 0


def cmd_serve(args) -> int:
    config = ServiceConfig.load(args.config) if args.config else ServiceConfig()
    for key in ("data", "host", "port", "landmarks", "querylog", "ledger", "ui_dir"):
        value = getattr(args, key, None)
        if value not in (None, ""):
            attr = {"data": "data_path", "querylog": "querylog_path", "ledger": "ledger_path"}.get(key, key)
            setattr(config, attr, value)
    handle = serve(config)
    print(f"listening on {handle.url} ({handle.state.counts['entities']} entities, "
          f"{handle.state.counts['edges']} edges)")

    stop = threading.Event()
    signal.signal(signal.SIGINT, lambda *_: stop.set())
    signal.signal(signal.SIGTERM, lambda *_: stop.set())
    stop.wait()
    handle.stop()
    for endpoint in ENDPOINTS:
        try:
            summary = handle.latency_summary(endpoint)
        except NoDataError:
            continue
        print(f"{endpoint}: count={summary['count']} avg={summary['avg']:.4f}s "
              f"p50={summary['p50']:.4f}s p95={summary['p95']:.4f}s")
    return 0


def cmd_bench_gen(args) -> int:
    counts = datagen.generate_dataset(args.seed, args.entities, args.relationships, args.out)
    print(json.dumps({**counts, "out": args.out}) if args.json else
          f"wrote {counts['entities']} entities, {counts['edges']} edges to {args.out}")
    return 0


def cmd_bench_run(args) -> int:
    graph = _load_graph(args.data) if args.data else None
    users, queries = _bench_corpus(graph, args.seed)
    levels = tuple(int(n) for n in args.levels.split(","))
    reports = []
    endpoints = args.endpoint.split(",") if args.endpoint != "all" else ["qs", "qac", "search"]
    for endpoint in endpoints:
        plan = bench_mod.BenchPlan(
            endpoint=endpoint, users=users, queries=queries,
            total_requests=args.total, levels=levels,
        )
        report = bench_mod.run_bench(plan, args.target, raise_on_failure=False)
        reports.append(report)
        for level in report.levels:
            print(f"{endpoint} n={level.n:<3} count={level.count:<5} avg={level.avg:.4f}s "
                  f"p50={level.p50:.4f}s p95={level.p95:.4f}s max={level.max:.4f}s "
                  f"failures={level.failures}")
    if args.out:
        bench_mod.write_csv(reports, args.out)
        bench_mod.write_json(reports, str(args.out) + ".json")
        print(f"wrote {args.out} and {args.out}.json")
    failures = sum(l.failures for r in reports for l in r.levels)
    if failures:
        print(json.dumps({"error": "partial_failure", "failures": failures}), file=sys.stderr)
        return 1
    return 0


def _bench_corpus(graph: SocialGraph | None, seed: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Users to impersonate and queries mixing prefixes, names and typos."""
    if graph is None:
        raise SocialSearchError("bench run requires --data to build its query corpus")
    rng = random.Random(seed)
    snapshot = graph.snapshot()
    users = sorted(e.id for e in snapshot.entities.values() if e.kind is EntityKind.USER)
    names = sorted({e.name for e in snapshot.entities.values()})
    rng.shuffle(users)
    queries = []
    for _ in range(200):
        name = rng.choice(names)
        mode = rng.random()
        if mode < 0.4:
            queries.append(name[: rng.randint(2, max(2, min(6, len(name))))])
        elif mode < 0.8 and len(name) > 3:
            i = rng.randrange(len(name))
            queries.append(name[:i] + rng.choice("abcdefghijklmnopqrstuvwxyz") + name[i + 1 :])
        else:
            queries.append(name)
    return tuple(users[:128] or sorted(snapshot.entities)[:1]), tuple(queries)


def cmd_debug_sim(args) -> int:
    engine = _build_engine(args)
    print(json.dumps(engine.score_breakdown(args.user, args.q, args.entity), indent=2))
    return 0


def _add_common(parser, data_required: bool = True) -> None:
    parser.add_argument("--data", required=data_required, help="ingest file (JSON lines)")
    parser.add_argument("--alpha", type=float, default=1.0)
    parser.add_argument("--beta", type=float, default=1.0)
    parser.add_argument("--landmarks", type=int, default=0, help="0 = default count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="socialsearch")
    parser.add_argument("--json", action="store_true", help="structured output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and count an ingest file")
    p.add_argument("--data", required=True)
    p.set_defaults(func=cmd_ingest)

    index = sub.add_parser("index", help="distance index operations").add_subparsers(
        dest="index_command", required=True
    )
    p = index.add_parser("build")
    p.add_argument("--data", required=True)
    p.add_argument("--landmarks", type=int, default=0)
    p.set_defaults(func=cmd_index_build)
    p = index.add_parser("report")
    p.add_argument("--data", required=True)
    p.add_argument("--landmarks", type=int, default=0)
    p.set_defaults(func=cmd_index_report)

    p = sub.add_parser("search", help="ranked search")
    _add_common(p)
    p.add_argument("--user", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--limit", type=int, default=25)
    p.add_argument("--kinds", default="")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("qac", help="query autocomplete")
    _add_common(p)
    p.add_argument("--user", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--limit", type=int, default=10)
    p.set_defaults(func=cmd_qac)

    p = sub.add_parser("qs", help="pre-typing query suggestions")
    p.add_argument("--data", required=True)
    p.add_argument("--querylog", required=True)
    p.add_argument("--user", required=True)
    p.add_argument("--now", type=float, default=None)
    p.add_argument("--window-days", type=float, default=7.0)
    p.set_defaults(func=cmd_qs)

    activity = sub.add_parser("activity", help="leaderboard ledger writes").add_subparsers(
        dest="activity_command", required=True
    )
    p = activity.add_parser("record")
    p.add_argument("--data", required=True)
    p.add_argument("--ledger", required=True)
    p.add_argument("--actor", required=True)
    p.add_argument("--action", required=True)
    p.add_argument("--location", required=True)
    p.add_argument("--object", required=True)
    p.add_argument("--ts", type=float, default=None)
    p.add_argument("--ref", type=int, default=None)
    p.set_defaults(func=cmd_activity_record)
    p = activity.add_parser("delete")
    p.add_argument("--data", required=True)
    p.add_argument("--ledger", required=True)
    p.add_argument("--activity", type=int, required=True)
    p.add_argument("--actor", required=True)
    p.add_argument("--ts", type=float, default=None)
    p.set_defaults(func=cmd_activity_delete)

    lb = sub.add_parser("leaderboard", help="leaderboard views").add_subparsers(
        dest="leaderboard_command", required=True
    )
    p = lb.add_parser("show")
    p.add_argument("--data", required=True)
    p.add_argument("--ledger", required=True)
    p.add_argument("--context", default="all")
    p.add_argument("--window", default="week", choices=[w.value for w in Window])
    p.add_argument("--kind", default="contributor", choices=[k.value for k in LeaderboardKind])
    p.add_argument("--design", default="hybrid-absolute", choices=[d.value for d in Design])
    p.add_argument("--user", required=True)
    p.add_argument("--now", type=float, default=None)
    p.set_defaults(func=cmd_leaderboard_show)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--config", default="")
    p.add_argument("--data", default="")
    p.add_argument("--host", default="")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--landmarks", type=int, default=None)
    p.add_argument("--querylog", default="")
    p.add_argument("--ledger", default="")
    p.add_argument("--ui-dir", dest="ui_dir", default="")
    p.set_defaults(func=cmd_serve)

    b = sub.add_parser("bench", help="dataset generation and load tests").add_subparsers(
        dest="bench_command", required=True
    )
    p = b.add_parser("gen")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--entities", type=int, required=True)
    p.add_argument("--relationships", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench_gen)
    p = b.add_parser("run")
    p.add_argument("--endpoint", default="all", help="qs, qac, search, or all")
    p.add_argument("--total", type=int, default=1000)
    p.add_argument("--levels", default="1,2,4,8,16,32,64")
    p.add_argument("--target", required=True)
    p.add_argument("--data", required=True, help="dataset file used to build the query corpus")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_bench_run)

    debug = sub.add_parser("debug", help="inspection helpers").add_subparsers(
        dest="debug_command", required=True
    )
    p = debug.add_parser("sim")
    _add_common(p)
    p.add_argument("--user", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--entity", required=True)
    p.set_defaults(func=cmd_debug_sim)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SocialSearchError as exc:
        print(json.dumps({"error": exc.code, "detail": str(exc)}), file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(json.dumps({"error": "file_not_found", "detail": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
