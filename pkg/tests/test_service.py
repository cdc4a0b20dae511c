from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from askdb.service import create_app, parse_bind
from golden import WORKED_QUESTION, WORKED_SQL, WORKED_TEMPLATE


@pytest.fixture(scope="module")
def client(catalog):
    return TestClient(create_app(catalog))


def test_health(client):
    response = client.get("/api/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_schema_lists_tables(client):
    response = client.get("/api/schema")
    assert response.status_code == 200
    tables = {t["name"]: t for t in response.json()["tables"]}
    assert set(tables) == {"department", "faculty", "course", "student"}
    department = tables["department"]
    assert department["default_attribute"] == "department-name"
    keys = {a["name"]: a["key"] for a in department["attributes"]}
    assert keys["department-code"] == "primary"
    assert keys["faculty-code"] == "foreign"


def test_query_success(client):
    response = client.post("/api/query", json={"question": WORKED_QUESTION})
    assert response.status_code == 200
    body = response.json()
    assert body["sql"] == [WORKED_SQL]
    assert body["template"] == WORKED_TEMPLATE
    assert body["trace"]["question"] == WORKED_QUESTION


def test_query_pipeline_failure_is_422(client):
    response = client.post(
        "/api/query", json={"question": "What are the available rockets?"}
    )
    assert response.status_code == 422
    body = response.json()
    assert body["error"]["stage"] == "word-check"
    assert body["error"]["detail"]["words"] == ["rockets"]
    assert body["trace"]["question"] == "What are the available rockets?"


def test_query_rejects_invalid_json(client):
    response = client.post(
        "/api/query",
        content=b"not json",
        headers={"content-type": "application/json"},
    )
    assert response.status_code == 400


def test_query_rejects_missing_question(client):
    assert client.post("/api/query", json={}).status_code == 400
    assert client.post("/api/query", json={"question": 7}).status_code == 400
    assert client.post("/api/query", json=["question"]).status_code == 400


def test_fallback_page_served_without_assets(client):
    response = client.get("/")
    assert response.status_code == 200
    assert "text/html" in response.headers["content-type"]
    assert "/api/query" in response.text


def test_static_dir_serves_console(catalog, tmp_path):
    (tmp_path / "index.html").write_text("<html><body>console here</body></html>")
    app = create_app(catalog, static_dir=tmp_path)
    response = TestClient(app).get("/")
    assert response.status_code == 200
    assert "console here" in response.text


def test_parse_bind_full_address():
    assert parse_bind("0.0.0.0:9000") == ("0.0.0.0", 9000)


def test_parse_bind_port_only():
    assert parse_bind(":8100") == ("127.0.0.1", 8100)


def test_parse_bind_rejects_garbage():
    with pytest.raises(ValueError):
        parse_bind("localhost")
    with pytest.raises(ValueError):
        parse_bind("host:port")
