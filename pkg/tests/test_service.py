import csv
import io
import json
import time

import pytest
from fastapi.testclient import TestClient
from starlette.routing import Route

from pubatlas.model import Author, Venue
from pubatlas.service.app import PUBLIC_ROUTES, create_app
from pubatlas.service.auth import AuthManager
from pubatlas.store import Store

from conftest import make_publication, random_corpus


class FakeClock:
    def __init__(self):
        self.now = 1_700_000_000.0

    def __call__(self):
        return self.now


@pytest.fixture
def service(rng):
    store = Store()
    for pub in random_corpus(rng, 80):
        store.upsert_publication(pub)
    store.upsert_publication(
        make_publication(
            "paper-1",
            title="A Study",
            abstract_text="confidential abstract body",
            venue_name="ACL",
        )
    )
    clock = FakeClock()
    auth = AuthManager(secret=b"test-secret", clock=clock)
    auth.register("admin", "admin-password", role="admin")
    auth.register("reader", "reader-password")
    app = create_app(store, auth=auth, workers=1)
    client = TestClient(app)
    try:
        yield client, store, clock
    finally:
        app.state.jobs.shutdown()


def _login(client, username, password) -> dict:
    response = client.post(
        "/auth/login", json={"username": username, "password": password}
    )
    assert response.status_code == 200
    return {"Authorization": f"Bearer {response.json()['token']}"}


@pytest.fixture
def admin_headers(service):
    client, _, _ = service
    return _login(client, "admin", "admin-password")


@pytest.fixture
def reader_headers(service):
    client, _, _ = service
    return _login(client, "reader", "reader-password")


# --- accounts -----------------------------------------------------------------

def test_register_fresh_username(service):
    client, _, _ = service
    response = client.post(
        "/auth/register", json={"username": "newbie", "password": "long-enough"}
    )
    assert response.status_code == 201
    assert response.json() == {"username": "newbie", "role": "user"}


def test_register_duplicate_username(service):
    client, _, _ = service
    payload = {"username": "dup", "password": "long-enough"}
    assert client.post("/auth/register", json=payload).status_code == 201
    response = client.post("/auth/register", json=payload)
    assert response.status_code == 409
    assert response.json()["code"] == "username_taken"


def test_register_weak_password(service):
    client, _, _ = service
    response = client.post(
        "/auth/register", json={"username": "w", "password": "abc"}
    )
    assert response.status_code == 400
    assert response.json()["code"] == "weak_password"


def test_login_wrong_password_is_uniform(service):
    client, _, _ = service
    wrong = client.post(
        "/auth/login", json={"username": "reader", "password": "nope-nope"}
    )
    unknown = client.post(
        "/auth/login", json={"username": "ghost", "password": "nope-nope"}
    )
    assert wrong.status_code == unknown.status_code == 401
    assert wrong.json()["message"] == unknown.json()["message"]


def test_expired_token_is_rejected(service, reader_headers):
    client, _, clock = service
    ok = client.get("/suggest/venues?pattern=.", headers=reader_headers)
    assert ok.status_code == 200
    clock.now += 24 * 3600 + 1
    stale = client.get("/suggest/venues?pattern=.", headers=reader_headers)
    assert stale.status_code == 401


def test_registration_does_not_grant_admin(service):
    client, store, _ = service
    client.post("/auth/register", json={"username": "u2", "password": "long-enough"})
    headers = _login(client, "u2", "reader-password" if False else "long-enough")
    response = client.delete("/admin/publications/paper-1", headers=headers)
    assert response.status_code == 403


# --- route-table sweep ------------------------------------------------------------

def test_every_non_auth_route_rejects_missing_tokens(service):
    client, _, _ = service
    placeholders = {
        "field": "venues",
        "operation": "per_year",
        "job_id": "j1",
        "collection": "publications",
        "record_id": "paper-1",
    }
    checked = 0
    for route in client.app.routes:
        if not isinstance(route, Route):
            continue
        path = route.path
        for name, value in placeholders.items():
            path = path.replace("{" + name + "}", value)
        for method in route.methods - {"HEAD", "OPTIONS"}:
            if (method, route.path) in PUBLIC_ROUTES:
                continue
            response = client.request(method, path)
            assert response.status_code == 401, (method, path, response.status_code)
            assert response.json()["code"] == "unauthenticated"
            checked += 1
    assert checked >= 8  # suggest, aggregate, topics x2, CRUD x4, export


def test_garbage_token_is_rejected(service):
    client, _, _ = service
    response = client.get(
        "/suggest/venues?pattern=.", headers={"Authorization": "Bearer junk.junk"}
    )
    assert response.status_code == 401


# --- aggregation endpoints ---------------------------------------------------------

def test_per_year_passthrough(service, reader_headers):
    client, store, _ = service
    response = client.post("/aggregate/per_year", json={}, headers=reader_headers)
    assert response.status_code == 200
    body = response.json()
    total = sum(count for _, count in body["years"]) + body["na"]
    assert total == store.count_publications()


def test_top_k_zero_is_a_bad_query(service, reader_headers):
    client, _, _ = service
    response = client.post(
        "/aggregate/top_k",
        json={"dimension": "venue", "k": 0},
        headers=reader_headers,
    )
    assert response.status_code == 400
    assert response.json()["code"] == "bad_query"


def test_malformed_filters_are_a_bad_query(service, reader_headers):
    client, _, _ = service
    response = client.post(
        "/aggregate/per_year",
        json={"filters": {"years": [2020, 2021]}},
        headers=reader_headers,
    )
    assert response.status_code == 400


def test_filtered_aggregation_respects_the_predicate(service, reader_headers):
    client, store, _ = service
    response = client.post(
        "/aggregate/grid",
        json={"dimension": "venue", "filters": {"venues": ["ACL"]}},
        headers=reader_headers,
    )
    rows = response.json()
    assert {row["name"] for row in rows} <= {"ACL"}


def test_paper_grid_lists_raw_records(service, reader_headers):
    client, _, _ = service
    response = client.post(
        "/aggregate/grid",
        json={"dimension": "paper", "filters": {"venues": ["ACL"]}, "limit": 5},
        headers=reader_headers,
    )
    rows = response.json()
    assert rows and all("title" in row for row in rows)
    assert all("abstract" not in key for row in rows for key in row)


def test_identical_query_is_served_from_cache(service, reader_headers):
    client, _, _ = service
    body = {"dimension": "venue", "metric": "citations", "k": 5}
    first = client.post("/aggregate/top_k", json=body, headers=reader_headers)
    second = client.post("/aggregate/top_k", json=body, headers=reader_headers)
    assert first.headers["X-Cache"] == "miss"
    assert second.headers["X-Cache"] == "hit"
    assert first.content == second.content


def test_crud_write_invalidates_the_cache(service, reader_headers, admin_headers):
    client, _, _ = service
    body = {"dimension": "venue", "metric": "papers", "k": 3}
    client.post("/aggregate/top_k", json=body, headers=reader_headers)
    created = client.post(
        "/admin/publications",
        json={"id": "new-pub", "title": "Fresh", "typeOfPaper": "article",
              "venue": "ACL", "inCitationsCount": 3},
        headers=admin_headers,
    )
    assert created.status_code == 201
    after = client.post("/aggregate/top_k", json=body, headers=reader_headers)
    assert after.headers["X-Cache"] == "miss"
    grid = client.post(
        "/aggregate/grid",
        json={"dimension": "venue", "filters": {"venues": ["ACL"]}},
        headers=reader_headers,
    ).json()
    acl = next(row for row in grid if row["name"] == "ACL")
    assert acl["papers"] >= 2  # reflects the write


def test_distribution_direction_parameter(service, reader_headers):
    client, _, _ = service
    incoming = client.post(
        "/aggregate/distribution", json={"dimension": "paper"}, headers=reader_headers
    )
    outgoing = client.post(
        "/aggregate/distribution",
        json={"dimension": "paper", "direction": "out"},
        headers=reader_headers,
    )
    assert incoming.status_code == outgoing.status_code == 200
    assert set(incoming.json()) == {"min", "q1", "median", "q3", "max", "avg", "n"}


def test_co_occurrence_requires_selected_value(service, reader_headers):
    client, _, _ = service
    response = client.post(
        "/aggregate/co_occurrence", json={"dimension": "author"}, headers=reader_headers
    )
    assert response.status_code == 400


def test_activity_endpoint(service, reader_headers):
    client, _, _ = service
    response = client.post(
        "/aggregate/activity",
        json={"dimension": "author", "window": [2020, 2022], "full_range": [2010, 2022]},
        headers=reader_headers,
    )
    assert response.status_code == 200
    assert set(response.json()) == {"active_count", "new_count"}


# --- suggestions ------------------------------------------------------------------

def test_suggest_requires_token(service):
    client, _, _ = service
    assert client.get("/suggest/venues?pattern=CV").status_code == 401


def test_suggest_bad_pattern(service, reader_headers):
    client, _, _ = service
    response = client.get("/suggest/venues?pattern=[", headers=reader_headers)
    assert response.status_code == 400
    assert response.json()["code"] == "invalid_pattern"


def test_suggest_values(service, reader_headers):
    client, _, _ = service
    response = client.get(
        "/suggest/types_of_paper?pattern=.*&limit=10", headers=reader_headers
    )
    assert len(response.json()["values"]) == 7


# --- CRUD --------------------------------------------------------------------------

def test_admin_create_read_round_trip(service, admin_headers):
    client, _, _ = service
    record = {
        "id": "rt-1",
        "title": "Round Trip",
        "abstractText": "secret",
        "typeOfPaper": "article",
        "yearPublished": 2019,
        "inCitationsCount": 2,
    }
    assert (
        client.post("/admin/publications", json=record, headers=admin_headers).status_code
        == 201
    )
    fetched = client.get("/admin/publications/rt-1", headers=admin_headers).json()
    assert fetched["title"] == "Round Trip"
    assert fetched["abstractText"] == "secret"
    assert fetched["yearPublished"] == 2019


def test_user_read_redacts_the_abstract(service, reader_headers):
    client, _, _ = service
    fetched = client.get("/admin/publications/paper-1", headers=reader_headers)
    assert fetched.status_code == 200
    assert "abstractText" not in fetched.json()
    assert fetched.json()["title"] == "A Study"


def test_user_cannot_mutate(service, reader_headers):
    client, _, _ = service
    for method, path, body in [
        ("POST", "/admin/publications", {"id": "x", "title": "T"}),
        ("PUT", "/admin/publications/paper-1", {"title": "T"}),
        ("DELETE", "/admin/publications/paper-1", None),
    ]:
        response = client.request(method, path, json=body, headers=reader_headers)
        assert response.status_code == 403
        assert response.json()["code"] == "forbidden"


def test_admin_delete_unknown_id(service, admin_headers):
    client, _, _ = service
    response = client.delete("/admin/publications/ghost", headers=admin_headers)
    assert response.status_code == 404
    assert response.json()["code"] == "not_found"


def test_admin_update_replaces_the_record(service, admin_headers):
    client, store, _ = service
    response = client.put(
        "/admin/publications/paper-1",
        json={"title": "Renamed", "typeOfPaper": "article"},
        headers=admin_headers,
    )
    assert response.status_code == 200
    assert store.get_publication("paper-1").title == "Renamed"


def test_author_and_venue_collections(service, admin_headers):
    client, store, _ = service
    assert (
        client.post(
            "/admin/authors",
            json={"id": "au-1", "fullname": "Ada Lovelace"},
            headers=admin_headers,
        ).status_code
        == 201
    )
    assert (
        client.get("/admin/authors/au-1", headers=admin_headers).json()["fullname"]
        == "Ada Lovelace"
    )
    assert (
        client.post(
            "/admin/venues",
            json={"id": "vn-1", "names": ["CVPR"]},
            headers=admin_headers,
        ).status_code
        == 201
    )
    assert client.delete("/admin/venues/vn-1", headers=admin_headers).status_code == 200
    assert store.get_venue("vn-1") is None


# --- export ------------------------------------------------------------------------

def test_grid_export_csv_has_header_plus_rows(service, reader_headers):
    client, _, _ = service
    response = client.get(
        "/export",
        params={"operation": "top_k", "dimension": "venue", "metric": "papers",
                "k": 2, "format": "csv"},
        headers=reader_headers,
    )
    assert response.status_code == 200
    lines = response.text.strip().splitlines()
    assert lines[0] == "name,value"
    assert len(lines) == 3


def test_empty_result_exports_header_only(service, reader_headers):
    client, _, _ = service
    response = client.get(
        "/export",
        params={
            "operation": "grid",
            "dimension": "venue",
            "format": "csv",
            "filters": json.dumps({"venues": ["No Such Venue"]}),
        },
        headers=reader_headers,
    )
    lines = response.text.strip().splitlines()
    assert lines == ["name,first_year,last_year,papers,citations,avg_citations"]


def test_csv_parses_back_to_the_json_rows(service, reader_headers):
    client, _, _ = service
    params = {"operation": "grid", "dimension": "venue"}
    as_json = client.get(
        "/export", params={**params, "format": "json"}, headers=reader_headers
    ).json()
    as_csv = client.get(
        "/export", params={**params, "format": "csv"}, headers=reader_headers
    ).text
    parsed = list(csv.DictReader(io.StringIO(as_csv)))
    assert len(parsed) == len(as_json)
    for got, want in zip(parsed, as_json):
        assert got["name"] == want["name"]
        assert int(got["papers"]) == want["papers"]
        assert int(got["citations"]) == want["citations"]
        assert float(got["avg_citations"]) == want["avg_citations"]


def test_export_rejects_unknown_format(service, reader_headers):
    client, _, _ = service
    response = client.get(
        "/export",
        params={"operation": "grid", "dimension": "venue", "format": "xml"},
        headers=reader_headers,
    )
    assert response.status_code == 400


# --- topic jobs over HTTP -------------------------------------------------------------

def test_topic_job_over_http(service, reader_headers):
    client, store, _ = service
    for i in range(12):
        store.upsert_publication(
            make_publication(
                f"tj-{i}",
                title=f"feline study {i}",
                abstract_text="cat meow kitten claw tuna whisker",
            )
        )
    submitted = client.post(
        "/topics/jobs", json={"k": 2, "seed": 1}, headers=reader_headers
    )
    assert submitted.status_code == 202
    job_id = submitted.json()["job_id"]
    deadline = time.time() + 60
    while time.time() < deadline:
        status = client.get(f"/topics/jobs/{job_id}", headers=reader_headers).json()
        if status["status"] in ("done", "failed"):
            break
        time.sleep(0.05)
    assert status["status"] == "done"
    assert len(status["result"]["coordinates"]) == 2


def test_unknown_job_is_404(service, reader_headers):
    client, _, _ = service
    response = client.get("/topics/jobs/none", headers=reader_headers)
    assert response.status_code == 404
    assert response.json()["code"] == "unknown_job"
