import pytest
from fastapi.testclient import TestClient

from chartbench import zoo
from chartbench.model import canonical_key, to_payload
from chartbench.moves import applicable_moves
from chartbench.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_validate_endpoint(client):
    r = client.post("/v1/validate", json={"chart": to_payload(zoo.oval_chart())})
    assert r.status_code == 200
    assert r.json()["verdict"] is True
    r2 = client.post(
        "/v1/validate",
        json={"chart": to_payload(zoo.free_edge_chart()), "policy": ["A3"]},
    )
    assert r2.json()["verdict"] is False


def test_validate_rejects_malformed(client):
    r = client.post("/v1/validate", json={"chart": {"n": 1}})
    assert r.status_code == 422


def test_analyze_endpoint(client):
    r = client.post("/v1/analyze", json={"chart": to_payload(zoo.oval_chart())})
    body = r.json()
    assert body["invariants"]["w"] == 2
    assert body["invariants"]["type"] == {"m": 1, "counts": [2]}
    assert "1" in body["labels"] and "2" in body["labels"]


def test_applicable_parity(client):
    chart = zoo.oval_chart()
    r = client.post("/v1/moves/applicable", json={"chart": to_payload(chart)})
    served = [tuple(sorted(m.items())) for m in (x for x in r.json()["moves"])]
    direct = [tuple(sorted(m.to_payload().items())) for m in applicable_moves(chart)]
    assert len(served) == len(direct)


def test_apply_and_error(client):
    chart = zoo.empty_chart(3)
    mv = {
        "kind": "CI-M1",
        "direction": "forward",
        "site": {"face": "sphere", "label": 1, "ccw": True, "parent": None},
    }
    r = client.post("/v1/moves/apply", json={"chart": to_payload(chart), "move": mv})
    assert r.status_code == 200
    assert len(r.json()["chart"]["hoops"]) == 1
    bad = {"kind": "CI-M1", "direction": "backward", "site": {"hoop": 5}}
    r2 = client.post("/v1/moves/apply", json={"chart": to_payload(chart), "move": bad})
    assert r2.status_code == 409


def test_match_endpoint(client):
    r = client.post(
        "/v1/patterns/match",
        json={"chart": to_payload(zoo.seven_white_chart()), "pattern": "fig11b"},
    )
    assert len(r.json()["embeddings"]) >= 1


def test_scenario_endpoint(client):
    r = client.post("/v1/scenarios/sec6-example/run")
    assert r.status_code == 200 and r.json()["ok"] is True
    assert client.post("/v1/scenarios/nope/run").status_code == 404


def test_catalog_endpoints(client):
    pats = client.get("/v1/catalog/patterns").json()["patterns"]
    assert "fig4a-oval" in pats
    charts = client.get("/v1/catalog/charts").json()["charts"]
    assert "oval" in charts and len(charts) >= 10
    payload = client.get("/v1/catalog/charts/oval").json()
    assert payload["format"] == "chart/v1"


def test_session_open_apply_undo(client):
    r = client.post("/v1/sessions", json={})
    sid = r.json()["session"]
    key0 = r.json()["key"]
    mv = {
        "kind": "CI-M1",
        "direction": "forward",
        "site": {"face": "sphere", "label": 1, "ccw": True, "parent": None},
    }
    r2 = client.post(f"/v1/sessions/{sid}/apply", json={"move": mv})
    assert r2.json()["key"] != key0
    r3 = client.post(f"/v1/sessions/{sid}/undo")
    assert r3.json()["key"] == key0
    # inapplicable move leaves the state unchanged
    bad = {"kind": "CI-M1", "direction": "backward", "site": {"hoop": 3}}
    r4 = client.post(f"/v1/sessions/{sid}/apply", json={"move": bad})
    assert r4.status_code == 409
    assert client.get(f"/v1/sessions/{sid}").json()["key"] == key0


def test_sessions_do_not_interleave(client):
    a = client.post("/v1/sessions", json={"catalog": "oval"}).json()
    b = client.post("/v1/sessions", json={"catalog": "lens"}).json()
    assert a["session"] != b["session"]
    assert a["key"] != b["key"]
    assert client.get(f"/v1/sessions/{a['session']}").json()["key"] == a["key"]
