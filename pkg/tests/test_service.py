from __future__ import annotations

import json
import urllib.error
import urllib.request

import pytest

from socialsearch.errors import DataLoadError, NoDataError
from socialsearch.graph import Edge, Entity, EntityKind, write_ingest_file
from socialsearch.service import (
    RequestLog,
    RequestLogRecord,
    ServiceConfig,
    serve,
)

from helpers import concept, user


def fetch(url: str, body: dict | None = None):
    request = urllib.request.Request(url)
    data = None
    if body is not None:
        data = json.dumps(body).encode()
        request.add_header("Content-Type", "application/json")
    try:
        with urllib.request.urlopen(request, data=data, timeout=10) as response:
            return response.status, json.loads(response.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


@pytest.fixture(scope="module")
def small_service(tmp_path_factory):
    path = tmp_path_factory.mktemp("svc") / "data.jsonl"
    entities = [
        user("u1", "Vittorio Carmignani", fields={"affiliation": "dtu"}),
        user("u2", "Maria Maistro"),
        concept("c1", "PCA", description="principal component analysis"),
        concept("c2", "clustering"),
        Entity(id="s1", kind=EntityKind.SOURCE, name="pca tutorial"),
        Entity(id="p1", kind=EntityKind.POST, name="question about pca"),
    ]
    edges = [
        Edge(src="u1", dst="c1", relation="includes"),
        Edge(src="u1", dst="u2", relation="includes"),
        Edge(src="c1", dst="s1", relation="teaches"),
    ]
    write_ingest_file(path, entities, edges)
    handle = serve(ServiceConfig(data_path=str(path)))
    yield handle
    handle.stop()


def test_health_reports_build_info(small_service):
    status, body = fetch(small_service.url + "/health")
    assert status == 200
    assert body["status"] == "ok"
    assert body["entities"] == 6 and body["edges"] == 3
    assert body["landmarks"] >= 1
    assert 0.0 <= body["saving_ratio"] <= 1.0


def test_missing_data_file_fails_startup(tmp_path):
    with pytest.raises(DataLoadError):
        serve(ServiceConfig(data_path=str(tmp_path / "nope.jsonl")))


def test_search_end_to_end_with_breakdown(small_service):
    status, body = fetch(small_service.url + "/search?user=u1&q=pca")
    assert status == 200
    assert body["results"]
    top = body["results"][0]
    assert top["id"] == "c1"
    assert {"overall", "topical", "social", "kind"} <= set(top)
    reconstructed = (top["topical"] + top["social"]) / 2
    assert abs(top["overall"] - reconstructed) <= 1e-12


def test_search_is_deterministic(small_service):
    a = fetch(small_service.url + "/search?user=u2&q=pca%20tutorial")
    b = fetch(small_service.url + "/search?user=u2&q=pca%20tutorial")
    assert a == b


def test_qac_restricts_kinds(small_service):
    status, body = fetch(small_service.url + "/qac?user=u1&q=pca&limit=5")
    assert status == 200
    assert body["results"]
    assert all(r["kind"] in ("user", "concept", "course") for r in body["results"])


def test_search_feeds_query_suggestions(small_service):
    fetch(small_service.url + "/search?user=u2&q=spectral%20methods&now=1000")
    status, body = fetch(small_service.url + "/qs?user=u2&now=2000")
    assert status == 200
    texts = [s["text"] for s in body["suggestions"]]
    assert "spectral methods" in texts


def test_error_mapping(small_service):
    status, body = fetch(small_service.url + "/search?user=ghost&q=pca")
    assert status == 404 and body["error"] == "unknown_user"
    status, body = fetch(small_service.url + "/search?user=u1&q=%21%21")
    assert status == 400 and body["error"] == "empty_query"
    status, body = fetch(small_service.url + "/qac?user=u1")
    assert status == 400
    status, body = fetch(small_service.url + "/nowhere")
    assert status == 404


def test_activity_round_trip_and_leaderboard(small_service):
    base = small_service.url
    status, body = fetch(base + "/activity", {
        "actor": "u1", "action": "source_add", "location": "c1", "object": "s1", "ts": 500,
    })
    assert status == 200
    recorded = body["activity"]
    assert recorded["points"] == 9.1

    status, body = fetch(base + "/activity", {
        "actor": "u2", "action": "include", "location": "c1", "object": "c2", "ts": 510,
    })
    assert status == 200

    status, body = fetch(base + f"/leaderboard?user=u2&context=c1&window=week&kind=contributor&design=hybrid-absolute&now=600")
    assert status == 200
    rows = body["rows"]
    assert rows[0]["user"] == "u1" and rows[0]["score"] == 9.1
    active = [r for r in rows if r["active"]]
    assert len(active) == 1 and active[0]["user"] == "u2"

    status, body = fetch(base + "/activity/delete", {
        "activity": recorded["id"], "actor": "u1", "ts": 520,
    })
    assert status == 200
    assert body["activity"]["points"] == -9.1

    status, body = fetch(base + f"/leaderboard?user=u2&context=c1&window=week&kind=contributor&design=hybrid50&now=600")
    assert status == 200
    assert all(row["user"] != "u1" for row in body["rows"])  # net zero drops u1


def test_activity_delete_not_owner(small_service):
    status, body = fetch(small_service.url + "/activity", {
        "actor": "u1", "action": "post_add", "location": "c1", "object": "p1", "ts": 700,
    })
    aid = body["activity"]["id"]
    status, body = fetch(small_service.url + "/activity/delete", {"activity": aid, "actor": "u2", "ts": 701})
    assert status == 403 and body["error"] == "not_owner"


def test_every_2xx_logs_exactly_one_record(small_service):
    log = small_service.state.request_log
    before = len(log.records())
    fetch(small_service.url + "/search?user=u1&q=pca")
    fetch(small_service.url + "/qs?user=u1")
    fetch(small_service.url + "/qac?user=u1&q=pc")
    after = log.records()
    assert len(after) == before + 3
    assert [r.endpoint for r in after[-3:]] == ["search", "qs", "qac"]
    assert all(r.status == 200 and r.latency >= 0 for r in after[-3:])


def test_latency_summary_avg_and_percentiles():
    log = RequestLog()
    log.append(RequestLogRecord("qs", "u1", 0.04, 100.0, 200))
    log.append(RequestLogRecord("qs", "u1", 0.08, 101.0, 200))
    summary = log.summary("qs")
    assert summary["avg"] == pytest.approx(0.06)
    assert summary["count"] == 2
    with pytest.raises(NoDataError):
        log.summary("search")
    with pytest.raises(NoDataError):
        log.summary("qs", since=200.0)


def test_stats_endpoint(small_service):
    fetch(small_service.url + "/search?user=u1&q=pca")
    status, body = fetch(small_service.url + "/stats?endpoint=search")
    assert status == 200
    assert body["count"] >= 1 and body["avg"] > 0


def test_config_file_and_env_overrides(tmp_path):
    cfg = tmp_path / "svc.conf"
    cfg.write_text("# comment\nport=8123\nwindow_days=14\ndata_path=/tmp/x.jsonl\n")
    config = ServiceConfig.load(cfg, env={})
    assert config.port == 8123
    assert config.window_days == 14.0
    assert config.data_path == "/tmp/x.jsonl"

    config = ServiceConfig.load(cfg, env={"SOCIALSEARCH_PORT": "9001", "SOCIALSEARCH_ALPHA": "2.5"})
    assert config.port == 9001
    assert config.alpha == 2.5


def test_search_kinds_filter_param(small_service):
    status, body = fetch(small_service.url + "/search?user=u1&q=pca&kinds=post")
    assert status == 200
    assert body["results"]
    assert all(r["kind"] == "post" for r in body["results"])
