import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient
from jsonschema import validate

import gridspectra
from gridspectra.graphs import format_graph, grid_graph, shrikhande_graph, clique_extension
from gridspectra.service.app import app

from conftest import encode_graph6

SCHEMA_PATH = Path(gridspectra.__file__).parent / "schemas" / "pipeline_report.schema.json"


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def schema():
    return json.loads(SCHEMA_PATH.read_text())


class TestConstruct:
    def test_extension(self, client):
        resp = client.post("/construct", json={"kind": "extension", "s": 2, "t": 2})
        assert resp.status_code == 200
        body = resp.json()
        assert body["n"] == 18
        assert body["edge_list"].startswith("18 81\n")

    def test_grid(self, client):
        resp = client.post("/construct", json={"kind": "grid", "m": 4})
        assert resp.json()["n"] == 16

    def test_shrikhande(self, client):
        resp = client.post("/construct", json={"kind": "shrikhande"})
        assert resp.json()["edge_count"] == 48

    def test_invalid_parameters(self, client):
        resp = client.post("/construct", json={"kind": "extension", "s": 1, "t": 2})
        assert resp.status_code == 400
        assert resp.json()["error"] == "invalid-parameter"
        resp = client.post("/construct", json={"kind": "grid"})
        assert resp.status_code == 400

    def test_unknown_kind_rejected(self, client):
        resp = client.post("/construct", json={"kind": "petersen"})
        assert resp.status_code == 422


class TestSpectrum:
    def test_grid4(self, client):
        text = format_graph(grid_graph(4))
        resp = client.post("/spectrum", json={"graph_text": text})
        assert resp.json() == {
            "integral": True,
            "spectrum": [[6, 1], [2, 6], [-2, 9]],
            "matches_expected": None,
        }

    def test_matches_expected(self, client):
        text = format_graph(clique_extension(grid_graph(3), 2))
        resp = client.post("/spectrum", json={"graph_text": text, "s": 2, "t": 2})
        assert resp.json()["matches_expected"] is True
        resp = client.post("/spectrum", json={"graph_text": text, "s": 2, "t": 3})
        assert resp.json()["matches_expected"] is False

    def test_non_integral(self, client):
        resp = client.post("/spectrum", json={"graph_text": "3 2\n0 1\n1 2\n"})
        assert resp.json()["integral"] is False

    def test_graph6_input(self, client):
        payload = encode_graph6(grid_graph(4))
        resp = client.post("/spectrum", json={"graph_text": payload, "format": "graph6"})
        assert resp.json()["spectrum"] == [[6, 1], [2, 6], [-2, 9]]


class TestCheck:
    def test_hoffman(self, client):
        text = format_graph(clique_extension(grid_graph(3), 2))
        resp = client.post(
            "/check", json={"graph_text": text, "s": 2, "t": 2, "stage": "hoffman"}
        )
        assert resp.json()["passed"] is True

    def test_unknown_stage(self, client):
        resp = client.post(
            "/check", json={"graph_text": "1 0\n", "s": 2, "t": 2, "stage": "bogus"}
        )
        assert resp.status_code == 400
        assert resp.json()["error"] == "invalid-parameter"


class TestLines:
    def test_extension(self, client):
        text = format_graph(clique_extension(grid_graph(3), 2))
        resp = client.post("/lines", json={"graph_text": text, "s": 2, "t": 2})
        body = resp.json()
        assert body["delta"] == 6
        assert body["q"] == [0, 0, 0, 6]
        assert len(body["lines"]) == 6

    def test_shrikhande_extension(self, client):
        text = format_graph(clique_extension(shrikhande_graph(), 2))
        resp = client.post("/lines", json={"graph_text": text, "s": 2, "t": 3})
        assert resp.json()["delta"] == 0


class TestPipeline:
    def test_genuine_extension(self, client, schema):
        text = format_graph(clique_extension(grid_graph(3), 2))
        resp = client.post("/pipeline", json={"graph_text": text, "s": 2, "t": 2})
        body = resp.json()
        assert body["verdict"] == "IsGridExtension"
        validate(body, schema)

    def test_shrikhande_extension(self, client, schema):
        text = format_graph(clique_extension(shrikhande_graph(), 2))
        resp = client.post(
            "/pipeline",
            json={"graph_text": text, "s": 2, "t": 3, "full_report": True},
        )
        body = resp.json()
        assert body["verdict"] == "FailsLineStructure"
        validate(body, schema)
        by_stage = {entry["stage"]: entry for entry in body["stages"]}
        assert by_stage["spectrum"]["pass"] is True
        assert by_stage["line-structure"]["pass"] is False

    def test_parse_error(self, client):
        resp = client.post("/pipeline", json={"graph_text": "junk", "s": 2, "t": 2})
        assert resp.status_code == 400
        body = resp.json()
        assert body["error"] == "parse"
        assert "line 1" in body["message"]

    def test_root_endpoint(self, client):
        resp = client.get("/")
        assert resp.status_code == 200
        assert "/pipeline" in resp.json()["endpoints"]
