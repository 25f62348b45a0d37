"""Concurrent load harness: n parallel clients splitting a request budget.

Each level runs n clients in parallel, every client issuing its share of
total/n requests back-to-back with zero think time over its own persistent
connection, each under a distinct user identity. Latency is measured
client-side, from request sent to response received. Failures are counted,
never dropped.
"""

from __future__ import annotations

import csv
import json
import random
import threading
import time
from dataclasses import dataclass, field
from http.client import HTTPConnection
from pathlib import Path
from urllib.parse import quote, urlsplit

from .errors import PartialFailureError, ServiceUnreachableError

DEFAULT_LEVELS = (1, 2, 4, 8, 16, 32, 64)


@dataclass(frozen=True)
class BenchPlan:
    endpoint: str  # "qs" | "qac" | "search"
    users: tuple[str, ...]
    queries: tuple[str, ...] = ()
    total_requests: int = 1000
    levels: tuple[int, ...] = DEFAULT_LEVELS
    limit: int | None = None  # result-list cap forwarded to qac/search

    def __post_init__(self):
        if self.endpoint not in ("qs", "qac", "search"):
            raise ValueError(f"unsupported endpoint {self.endpoint!r}")
        if not self.users:
            raise ValueError("at least one user is required")
        if self.endpoint != "qs" and not self.queries:
            raise ValueError("query corpus required for qac/search")
        if any(n < 1 for n in self.levels):
            raise ValueError("levels must be positive")


@dataclass(frozen=True)
class LevelStats:
    n: int
    count: int  # requests attempted (n * per-client share)
    failures: int
    avg: float
    p50: float
    p95: float
    max: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "count": self.count,
            "failures": self.failures,
            "avg_s": self.avg,
            "p50_s": self.p50,
            "p95_s": self.p95,
            "max_s": self.max,
        }


@dataclass(frozen=True)
class BenchReport:
    endpoint: str
    levels: tuple[LevelStats, ...]
    dataset: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "endpoint": self.endpoint,
            "dataset": self.dataset,
            "levels": [level.to_dict() for level in self.levels],
        }


def _request_path(plan: BenchPlan, user: str, query: str | None) -> str:
    if plan.endpoint == "qs":
        return f"/qs?user={quote(user)}"
    suffix = f"&limit={plan.limit}" if plan.limit else ""
    if plan.endpoint == "qac":
        return f"/qac?user={quote(user)}&q={quote(query)}{suffix}"
    return f"/search?user={quote(user)}&q={quote(query)}{suffix}"


def _client(host: str, port: int, plan: BenchPlan, worker: int, share: int,
            latencies: list[float], failures: list[int], timeout: float) -> None:
    user = plan.users[worker % len(plan.users)]
    rng = random.Random(worker * 7919 + 17)
    conn = HTTPConnection(host, port, timeout=timeout)
    own_latencies: list[float] = []
    own_failures = 0
    try:
        for _ in range(share):
            query = rng.choice(plan.queries) if plan.queries else None
            path = _request_path(plan, user, query)
            started = time.perf_counter()
            try:
                conn.request("GET", path)
                response = conn.getresponse()
                response.read()
                elapsed = time.perf_counter() - started
                if response.status == 200:
                    own_latencies.append(elapsed)
                else:
                    own_failures += 1
            except OSError:
                own_failures += 1
                conn.close()
                conn = HTTPConnection(host, port, timeout=timeout)
    finally:
        conn.close()
    latencies[worker] = own_latencies
    failures[worker] = own_failures


def _percentile(sorted_values: list[float], q: float) -> float:
    return sorted_values[int(q * (len(sorted_values) - 1))]


def check_health(target: str, timeout: float = 5.0) -> dict:
    parts = urlsplit(target)
    conn = HTTPConnection(parts.hostname, parts.port, timeout=timeout)
    try:
        conn.request("GET", "/health")
        response = conn.getresponse()
        body = response.read()
        if response.status != 200:
            raise ServiceUnreachableError(f"{target} returned {response.status}")
        return json.loads(body)
    except OSError as exc:
        raise ServiceUnreachableError(f"{target}: {exc}") from exc
    finally:
        conn.close()


def run_bench(plan: BenchPlan, target: str, timeout: float = 30.0,
              raise_on_failure: bool = True) -> BenchReport:
    """Run every level of the plan against a live service."""
    health = check_health(target)
    parts = urlsplit(target)
    host, port = parts.hostname, parts.port

    levels: list[LevelStats] = []
    total_failures = 0
    for n in plan.levels:
        share = plan.total_requests // n
        latencies: list = [None] * n
        failures: list = [0] * n
        threads = [
            threading.Thread(
                target=_client,
                args=(host, port, plan, worker, share, latencies, failures, timeout),
            )
            for worker in range(n)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        collected = sorted(x for chunk in latencies for x in chunk)
        failed = sum(failures)
        total_failures += failed
        if collected:
            stats = LevelStats(
                n=n,
                count=n * share,
                failures=failed,
                avg=sum(collected) / len(collected),
                p50=_percentile(collected, 0.50),
                p95=_percentile(collected, 0.95),
                max=collected[-1],
            )
        else:
            stats = LevelStats(n=n, count=n * share, failures=failed,
                               avg=0.0, p50=0.0, p95=0.0, max=0.0)
        levels.append(stats)

    report = BenchReport(
        endpoint=plan.endpoint,
        levels=tuple(levels),
        dataset={
            "entities": health.get("entities"),
            "relationships": health.get("edges"),
            "landmark_saving_ratio": health.get("saving_ratio"),
        },
    )
    if total_failures and raise_on_failure:
        raise PartialFailureError(total_failures, report=report)
    return report


def write_csv(reports: list[BenchReport], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["endpoint", "n", "count", "avg_s", "p50_s", "p95_s", "max_s"])
        for report in reports:
            for level in report.levels:
                writer.writerow(
                    [report.endpoint, level.n, level.count,
                     f"{level.avg:.6f}", f"{level.p50:.6f}", f"{level.p95:.6f}", f"{level.max:.6f}"]
                )


def write_json(reports: list[BenchReport], path: str | Path) -> None:
    payload = [report.to_dict() for report in reports]
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
