"""HTTP facade over search, autocomplete, suggestions and leaderboards.

One embedded-storage process: startup ingests the dataset and builds every
index before the socket accepts traffic. Reads run fully concurrently over
the immutable snapshot; the two write paths (activity ledger, query log)
serialize through their own locks. Every completed request appends one
latency record, measured with the monotonic clock from request parse to
response serialization.
"""

from __future__ import annotations

import json
import mimetypes
import os
import threading
import time
from dataclasses import dataclass, field, fields as dataclass_fields
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlsplit

from . import distances, text
from .engine import SearchEngine, SimilarityWeights
from .errors import (
    BindError,
    DataLoadError,
    NoDataError,
    SocialSearchError,
    UnknownEntityError,
)
from .graph import EntityKind, SocialGraph
from .leaderboard import ActivityLedger, Design, LeaderboardKind, Window
from .suggest import QueryLog, Suggester

ENV_PREFIX = "SOCIALSEARCH_"
ENDPOINTS = ("qs", "qac", "search", "activity", "leaderboard")


@dataclass
class ServiceConfig:
    data_path: str = ""
    host: str = "127.0.0.1"
    port: int = 0  # 0 picks a free port
    landmarks: int = 0  # 0 means the default landmark count
    window_days: float = 7.0
    alpha: float = 1.0
    beta: float = 1.0
    search_limit: int = 25
    qac_limit: int = 10
    querylog_path: str = ""
    ledger_path: str = ""
    ui_dir: str = ""

    @classmethod
    def load(cls, path: str | Path | None = None, env: dict | None = None) -> "ServiceConfig":
        """Key=value config file, then SOCIALSEARCH_* environment overrides."""
        values: dict[str, str] = {}
        if path is not None:
            for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"config line {lineno}: expected key=value")
                key, _, value = line.partition("=")
                values[key.strip()] = value.strip()
        env = os.environ if env is None else env
        for spec in dataclass_fields(cls):
            env_key = ENV_PREFIX + spec.name.upper()
            if env_key in env:
                values[spec.name] = env[env_key]
        config = cls()
        for spec in dataclass_fields(cls):
            if spec.name not in values:
                continue
            raw = values[spec.name]
            kind = spec.type if isinstance(spec.type, type) else {"str": str, "int": int, "float": float}[spec.type]
            setattr(config, spec.name, kind(raw))
        return config


@dataclass(frozen=True)
class RequestLogRecord:
    endpoint: str
    user: str
    latency: float  # seconds, monotonic clock
    timestamp: float
    status: int


class RequestLog:
    def __init__(self):
        self._records: list[RequestLogRecord] = []
        self._lock = threading.Lock()

    def append(self, record: RequestLogRecord) -> None:
        with self._lock:
            self._records.append(record)

    def records(self) -> tuple[RequestLogRecord, ...]:
        with self._lock:
            return tuple(self._records)

    def summary(
        self, endpoint: str, since: float | None = None, until: float | None = None
    ) -> dict[str, float]:
        latencies = sorted(
            r.latency
            for r in self.records()
            if r.endpoint == endpoint
            and (since is None or r.timestamp >= since)
            and (until is None or r.timestamp <= until)
        )
        if not latencies:
            raise NoDataError(endpoint)
        n = len(latencies)
        return {
            "count": n,
            "avg": sum(latencies) / n,
            "p50": latencies[int(0.50 * (n - 1))],
            "p95": latencies[int(0.95 * (n - 1))],
        }


class AppState:
    """Everything a request handler needs, built once before serving."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        graph = SocialGraph()
        try:
            counts = graph.ingest(config.data_path)
        except OSError as exc:
            raise DataLoadError(f"cannot read {config.data_path}: {exc}") from exc
        except SocialSearchError as exc:
            raise DataLoadError(f"bad data in {config.data_path}: {exc}") from exc
        self.graph = graph
        self.counts = counts
        self.snapshot = graph.snapshot()
        self.text_index = text.build_text_index(self.snapshot)
        self.distance_index = distances.build_distance_index(
            self.snapshot, config.landmarks or None
        )
        self.engine = SearchEngine(
            self.snapshot,
            self.text_index,
            self.distance_index,
            SimilarityWeights(config.alpha, config.beta),
        )
        self.suggester = Suggester(
            self.snapshot,
            QueryLog(config.querylog_path or None),
            window_days=config.window_days,
        )
        self.ledger = ActivityLedger(self.snapshot, config.ledger_path or None)
        self.request_log = RequestLog()
        self.started_at = time.time()


_STATUS_BY_CODE = {
    "unknown_user": 404,
    "unknown_id": 404,
    "unknown_entity": 404,
    "unknown_activity": 404,
    "not_owner": 403,
    "empty_query": 400,
    "unknown_action": 400,
    "out_of_range": 400,
    "no_data": 404,
}


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    disable_nagle_algorithm = True  # small JSON replies must not wait for ACKs
    state: AppState = None  # injected per server

    # silence the default stderr access log
    def log_message(self, format, *args):  # noqa: A002
        pass

    def parse_request(self):
        # latency window opens when parsing starts (the request line has
        # arrived; keep-alive idle time between requests is excluded)
        self._parse_started = time.perf_counter()
        return super().parse_request()

    def do_GET(self):
        started = self._parse_started
        url = urlsplit(self.path)
        route = url.path.rstrip("/") or "/"
        params = {k: v[-1] for k, v in parse_qs(url.query).items()}
        try:
            if route == "/health":
                self._finish("health", params, 200, self._health(), started)
            elif route == "/qs":
                self._finish("qs", params, 200, self._qs(params), started)
            elif route == "/qac":
                self._finish("qac", params, 200, self._qac(params), started)
            elif route == "/search":
                self._finish("search", params, 200, self._search(params), started)
            elif route == "/leaderboard":
                self._finish("leaderboard", params, 200, self._leaderboard(params), started)
            elif route == "/stats":
                self._finish("stats", params, 200, self._stats(params), started)
            else:
                self._static(url.path, params, started)
        except SocialSearchError as exc:
            status = _STATUS_BY_CODE.get(exc.code, 400)
            self._finish(route.lstrip("/"), params, status, {"error": exc.code, "detail": str(exc)}, started)
        except (KeyError, ValueError) as exc:
            self._finish(route.lstrip("/"), params, 400, {"error": "bad_request", "detail": str(exc)}, started)

    def do_POST(self):
        started = self._parse_started
        route = urlsplit(self.path).path.rstrip("/")
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b"{}"
        try:
            body = json.loads(raw.decode("utf-8")) if raw.strip() else {}
            if route == "/activity":
                self._finish("activity", body, 200, self._activity(body), started)
            elif route == "/activity/delete":
                self._finish("activity", body, 200, self._activity_delete(body), started)
            else:
                self._finish("unknown", body, 404, {"error": "not_found", "detail": route}, started)
        except json.JSONDecodeError as exc:
            self._finish(route.lstrip("/"), {}, 400, {"error": "bad_request", "detail": str(exc)}, started)
        except SocialSearchError as exc:
            status = _STATUS_BY_CODE.get(exc.code, 400)
            self._finish(route.lstrip("/"), {}, status, {"error": exc.code, "detail": str(exc)}, started)
        except (KeyError, ValueError) as exc:
            self._finish(route.lstrip("/"), {}, 400, {"error": "bad_request", "detail": str(exc)}, started)

    # endpoint implementations

    def _health(self) -> dict:
        report = distances.compression_report(self.state.distance_index)
        return {
            "status": "ok",
            "entities": self.state.counts["entities"],
            "edges": self.state.counts["edges"],
            "landmarks": len(self.state.distance_index.landmarks),
            "saving_ratio": report.saving_ratio,
            "started_at": self.state.started_at,
        }

    def _qs(self, params: dict) -> dict:
        user = params["user"]
        now = float(params["now"]) if "now" in params else time.time()
        suggestions = self.state.suggester.suggest(user, now)
        return {"user": user, "suggestions": [s.to_dict() for s in suggestions]}

    def _named(self, results) -> list[dict]:
        entities = self.state.snapshot.entities
        return [{**r.to_dict(), "name": entities[r.entity_id].name} for r in results]

    def _qac(self, params: dict) -> dict:
        user = params["user"]
        limit = int(params.get("limit", self.state.config.qac_limit))
        results = self.state.engine.autocomplete(user, params["q"], limit)
        return {"user": user, "q": params["q"], "results": self._named(results)}

    def _search(self, params: dict) -> dict:
        user = params["user"]
        query = params["q"]
        limit = int(params.get("limit", self.state.config.search_limit))
        kinds = None
        if params.get("kinds"):
            kinds = [EntityKind(k) for k in params["kinds"].split(",") if k]
        results = self.state.engine.search(user, query, limit, kinds)
        ts = float(params["now"]) if "now" in params else time.time()
        self.state.suggester.log_query(user, query, ts, params.get("clicked"))
        return {"user": user, "q": query, "results": self._named(results)}

    def _leaderboard(self, params: dict) -> dict:
        context = params.get("context") or None
        if context in ("all", "*"):
            context = None
        if context is not None and not self.state.snapshot.has_entity(context):
            raise UnknownEntityError(context)
        view = self.state.ledger.build_view(
            kind=LeaderboardKind(params.get("kind", "contributor")),
            window=Window(params.get("window", "week")),
            now=float(params["now"]) if "now" in params else time.time(),
            active_user=params["user"],
            design=Design(params.get("design", Design.HYBRID_ABSOLUTE.value)),
            context=context,
        )
        return view.to_dict()

    def _stats(self, params: dict) -> dict:
        endpoint = params["endpoint"]
        since = float(params["since"]) if "since" in params else None
        until = float(params["until"]) if "until" in params else None
        summary = self.state.request_log.summary(endpoint, since, until)
        return {"endpoint": endpoint, **summary}

    def _activity(self, body: dict) -> dict:
        activity = self.state.ledger.record_activity(
            actor=body["actor"],
            action=body["action"],
            location=body["location"],
            object_id=body["object"],
            ts=float(body["ts"]) if "ts" in body and body["ts"] is not None else time.time(),
            ref=body.get("ref"),
        )
        return {"activity": activity.to_dict()}

    def _activity_delete(self, body: dict) -> dict:
        activity = self.state.ledger.record_delete(
            activity_id=int(body["activity"]),
            actor=body["actor"],
            ts=float(body["ts"]) if "ts" in body and body["ts"] is not None else time.time(),
        )
        return {"activity": activity.to_dict()}

    # plumbing

    def _finish(self, endpoint: str, params: dict, status: int, payload: dict, started: float) -> None:
        body = json.dumps(payload).encode("utf-8")
        latency = time.perf_counter() - started
        # log before writing so the record is visible once the client has the response
        user = params.get("user") or params.get("actor") or ""
        self.state.request_log.append(
            RequestLogRecord(
                endpoint=endpoint,
                user=str(user),
                latency=latency,
                timestamp=time.time(),
                status=status,
            )
        )
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _static(self, path: str, params: dict, started: float) -> None:
        ui_dir = self.state.config.ui_dir
        if not ui_dir:
            self._finish(path.lstrip("/") or "root", params, 404, {"error": "not_found", "detail": path}, started)
            return
        root = Path(ui_dir).resolve()
        relative = path.lstrip("/") or "index.html"
        target = (root / relative).resolve()
        if root not in target.parents and target != root:
            self._finish("static", params, 404, {"error": "not_found", "detail": path}, started)
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._finish("static", params, 404, {"error": "not_found", "detail": path}, started)
            return
        body = target.read_bytes()
        content_type = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self.state.request_log.append(
            RequestLogRecord(
                endpoint="static",
                user="",
                latency=time.perf_counter() - started,
                timestamp=time.time(),
                status=200,
            )
        )
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


class ServiceHandle:
    """A running service; stop() shuts the socket down and joins the thread."""

    def __init__(self, server: ThreadingHTTPServer, thread: threading.Thread, state: AppState):
        self.server = server
        self.thread = thread
        self.state = state

    @property
    def port(self) -> int:
        return self.server.server_address[1]

    @property
    def url(self) -> str:
        return f"http://{self.state.config.host}:{self.port}"

    def latency_summary(
        self, endpoint: str, since: float | None = None, until: float | None = None
    ) -> dict[str, float]:
        return self.state.request_log.summary(endpoint, since, until)

    def stop(self) -> None:
        self.server.shutdown()
        self.thread.join()
        self.server.server_close()


def serve(config: ServiceConfig) -> ServiceHandle:
    """Build all indexes, bind the socket, and serve from a daemon thread."""
    state = AppState(config)
    handler = type("BoundHandler", (_Handler,), {"state": state})
    try:
        server = ThreadingHTTPServer((config.host, config.port), handler)
    except OSError as exc:
        raise BindError(f"cannot bind {config.host}:{config.port}: {exc}") from exc
    server.daemon_threads = True
    thread = threading.Thread(target=server.serve_forever, name="socialsearch-http", daemon=True)
    thread.start()
    return ServiceHandle(server=server, thread=thread, state=state)
