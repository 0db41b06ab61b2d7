"""HTTP API binding together the store, filters, aggregations and topic jobs.

Routes (the dashboard's stable contract):
    POST /auth/register         POST /auth/login
    GET  /suggest/{field}
    POST /aggregate/{operation}  operation in {per_year, grid, distribution,
                                 top_k, bins, co_occurrence, activity}
    POST /topics/jobs           GET /topics/jobs/{job_id}
    POST /admin/{collection}    GET/PUT/DELETE /admin/{collection}/{id}
    GET  /export

Everything except register/login requires a bearer token; mutating admin
routes additionally require the admin role. Aggregation responses are
cached on the canonical query key: a repeat query returns the identical
bytes with an X-Cache: hit header, and any write empties the cache.
Errors are JSON {code, message}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from fastapi import Depends, FastAPI, Header, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import aggregate as agg
from .. import filters as qf
from .. import ingest as serialization
from ..model import validate, validate_author, validate_venue
from ..store import Store
from ..topics import JobManager, UnknownJob
from . import export as export_mod
from .auth import (
    AuthError,
    AuthManager,
    Forbidden,
    InvalidCredentials,
    Unauthenticated,
    UsernameTaken,
    WeakPassword,
)

OPERATIONS = (
    "per_year",
    "grid",
    "distribution",
    "top_k",
    "bins",
    "co_occurrence",
    "activity",
)

_COLLECTIONS = ("publications", "authors", "venues")

PUBLIC_ROUTES = {("POST", "/auth/register"), ("POST", "/auth/login")}


class BadQuery(ValueError):
    pass


class NotFound(KeyError):
    pass


@dataclass
class ServiceConfig:
    port: int = 8000
    data_dir: str | None = None
    workers: int = 2
    admin_user: str | None = None
    admin_password: str | None = None
    secret: bytes | None = None


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def parse_filters(data: object) -> qf.FilterSet:
    if data is None:
        return qf.FilterSet()
    if not isinstance(data, dict):
        raise BadQuery("filters must be a JSON object")
    try:
        return qf.FilterSet.from_dict(data)
    except qf.InvalidFilter as exc:
        raise BadQuery(str(exc))


def _parse_dimension(raw: object, default: qf.Dimension | None = None) -> qf.Dimension:
    if raw is None:
        if default is None:
            raise BadQuery("dimension is required")
        return default
    try:
        return qf.Dimension(raw)
    except ValueError:
        raise BadQuery(f"unknown dimension: {raw!r}")


def _parse_metric(raw: object, default: agg.Metric) -> agg.Metric:
    if raw is None:
        return default
    try:
        return agg.Metric(raw)
    except ValueError:
        raise BadQuery(f"unknown metric: {raw!r}")


def _parse_direction(raw: object) -> str:
    if raw is None:
        return "in"
    if raw not in ("in", "out"):
        raise BadQuery(f"direction must be 'in' or 'out', got {raw!r}")
    return raw


def _parse_window(raw: object, what: str) -> tuple[int, int]:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw)
    ):
        raise BadQuery(f"{what} must be [start, end] integers")
    return raw[0], raw[1]


def compute_aggregation(store: Store, operation: str, params: dict) -> dict | list:
    """Run one aggregation over the filtered snapshot; pure of HTTP concerns."""
    filter_set = parse_filters(params.get("filters"))
    predicate = qf.compile_predicate(filter_set)
    snapshot = list(store.scan(predicate))
    exclude_others = bool(params.get("exclude_others", False))

    if operation == "per_year":
        dimension = _parse_dimension(params.get("dimension"), qf.Dimension.PAPER)
        metric = _parse_metric(params.get("metric"), agg.Metric.PAPERS)
        if metric is agg.Metric.CITATIONS:
            series = agg.citation_totals_per_year(
                snapshot, _parse_direction(params.get("direction"))
            )
        else:
            series = agg.count_per_year(snapshot, dimension)
        return series.to_dict()

    if operation == "grid":
        dimension = _parse_dimension(params.get("dimension"))
        if dimension is qf.Dimension.PAPER:
            limit = params.get("limit", 100)
            if not isinstance(limit, int) or limit < 1:
                raise BadQuery("limit must be a positive integer")
            return [
                {
                    "id": pub.id,
                    "title": pub.title,
                    "year_published": pub.year_published,
                    "authors": list(pub.author_names),
                    "venue": pub.venue_name,
                    "citations": pub.in_citations_count,
                    "url": pub.url,
                }
                for pub in snapshot[:limit]
            ]
        rows = agg.grid_rows(snapshot, dimension, exclude_others=exclude_others)
        return [row.to_dict() for row in rows]

    if operation == "distribution":
        dimension = _parse_dimension(params.get("dimension"), qf.Dimension.PAPER)
        metric = _parse_metric(params.get("metric"), agg.Metric.CITATIONS)
        direction = _parse_direction(params.get("direction"))
        if dimension is qf.Dimension.PAPER:
            values = [
                pub.in_citations_count if direction == "in" else pub.out_citations_count
                for pub in snapshot
            ]
        else:
            totals = agg.entity_metric_totals(snapshot, dimension, metric)
            if exclude_others:
                totals.pop(agg.OTHERS, None)
            values = list(totals.values())
        if not values:
            raise BadQuery("no values to summarize for this filter")
        return agg.distribution(values).to_dict()

    if operation == "top_k":
        dimension = _parse_dimension(params.get("dimension"))
        metric = _parse_metric(params.get("metric"), agg.Metric.CITATIONS)
        k = params.get("k")
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise BadQuery("k must be a positive integer")
        if dimension is qf.Dimension.PAPER:
            weight = (
                (lambda p: p.in_citations_count)
                if metric is agg.Metric.CITATIONS
                else (lambda p: 1)
            )
            ranked = sorted(snapshot, key=lambda p: (-weight(p), p.title))[:k]
            return [[pub.title, weight(pub)] for pub in ranked]
        return [
            [name, value]
            for name, value in agg.top_k(
                snapshot, dimension, metric, k, exclude_others=exclude_others
            )
        ]

    if operation == "bins":
        direction = _parse_direction(params.get("direction"))
        return agg.citation_bins(snapshot, direction).to_dict()

    if operation == "co_occurrence":
        dimension = _parse_dimension(params.get("dimension"))
        selected = params.get("selected_value")
        if not isinstance(selected, str) or not selected:
            raise BadQuery("selected_value is required")
        try:
            return agg.co_occurrence(snapshot, dimension, selected)
        except ValueError as exc:
            raise BadQuery(str(exc))

    if operation == "activity":
        dimension = _parse_dimension(params.get("dimension"))
        window = _parse_window(params.get("window"), "window")
        full_range = _parse_window(params.get("full_range"), "full_range")
        try:
            return agg.activity_window(snapshot, dimension, window, full_range)
        except ValueError as exc:
            raise BadQuery(str(exc))

    raise BadQuery(f"unknown operation: {operation!r}")


def aggregation_cache_key(operation: str, params: dict) -> str:
    filter_set = parse_filters(params.get("filters"))
    extras = {
        key: params[key]
        for key in (
            "k",
            "selected_value",
            "window",
            "full_range",
            "direction",
            "exclude_others",
            "limit",
        )
        if key in params
    }
    return qf.canonical_key(
        operation,
        params.get("dimension"),
        params.get("metric"),
        filter_set,
        extras=extras,
    )


def canonical_json(result: object) -> bytes:
    return json.dumps(result, sort_keys=True, separators=(",", ":")).encode("utf-8")


def create_app(
    store: Store,
    auth: AuthManager | None = None,
    jobs: JobManager | None = None,
    workers: int = 2,
) -> FastAPI:
    auth = auth or AuthManager()
    jobs = jobs or JobManager(store, workers=workers)
    app = FastAPI(docs_url=None, redoc_url=None, openapi_url=None)
    app.state.store = store
    app.state.auth = auth
    app.state.jobs = jobs
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["Authorization", "Content-Type"],
        expose_headers=["X-Cache"],
    )

    def authenticated(authorization: str | None = Header(default=None)):
        if authorization is None:
            raise Unauthenticated("missing Authorization header")
        scheme, _, token = authorization.partition(" ")
        if scheme.lower() != "bearer" or not token:
            raise Unauthenticated("expected a bearer token")
        return auth.verify(token)

    @app.exception_handler(AuthError)
    async def _auth_error(request: Request, exc: AuthError):
        if isinstance(exc, Unauthenticated):
            return _error(401, "unauthenticated", str(exc))
        if isinstance(exc, Forbidden):
            return _error(403, "forbidden", str(exc))
        if isinstance(exc, UsernameTaken):
            return _error(409, "username_taken", str(exc))
        if isinstance(exc, WeakPassword):
            return _error(400, "weak_password", str(exc))
        if isinstance(exc, InvalidCredentials):
            return _error(401, "invalid_credentials", str(exc))
        return _error(400, "auth_error", str(exc))

    @app.exception_handler(BadQuery)
    async def _bad_query(request: Request, exc: BadQuery):
        return _error(400, "bad_query", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _unparseable(request: Request, exc: RequestValidationError):
        return _error(400, "bad_query", "malformed request body")

    @app.exception_handler(qf.InvalidPattern)
    async def _bad_pattern(request: Request, exc: qf.InvalidPattern):
        return _error(400, "invalid_pattern", str(exc))

    @app.exception_handler(qf.InvalidFilter)
    async def _bad_filter(request: Request, exc: qf.InvalidFilter):
        return _error(400, "bad_query", str(exc))

    @app.exception_handler(NotFound)
    async def _not_found(request: Request, exc: NotFound):
        return _error(404, "not_found", str(exc.args[0]) if exc.args else "not found")

    @app.exception_handler(UnknownJob)
    async def _unknown_job(request: Request, exc: UnknownJob):
        return _error(404, "unknown_job", str(exc.args[0]) if exc.args else "unknown job")

    @app.post("/auth/register", status_code=201)
    async def register(body: dict):
        username = body.get("username")
        password = body.get("password")
        if not isinstance(username, str) or not isinstance(password, str):
            raise BadQuery("username and password are required")
        account = auth.register(username, password)
        return {"username": account.username, "role": account.role}

    @app.post("/auth/login")
    async def login(body: dict):
        username = body.get("username")
        password = body.get("password")
        if not isinstance(username, str) or not isinstance(password, str):
            raise BadQuery("username and password are required")
        token = auth.login(username, password)
        return {
            "token": token.token,
            "subject": token.subject,
            "expires_at": token.expires_at,
        }

    @app.get("/suggest/{field}")
    async def suggest(
        field: str,
        pattern: str = "",
        limit: int = 10,
        account=Depends(authenticated),
    ):
        try:
            values = qf.suggest(store, field, pattern, limit)
        except qf.InvalidFilter as exc:
            raise BadQuery(str(exc))
        return {"field": field, "values": values}

    @app.post("/aggregate/{operation}")
    async def aggregate_endpoint(
        operation: str, body: dict, account=Depends(authenticated)
    ):
        if operation not in OPERATIONS:
            raise BadQuery(f"unknown operation: {operation!r}")
        key = aggregation_cache_key(operation, body)
        cached = store.cache_get(key)
        if cached is not None:
            return Response(
                content=cached,
                media_type="application/json",
                headers={"X-Cache": "hit"},
            )
        result = compute_aggregation(store, operation, body)
        payload = canonical_json(result)
        store.cache_put(key, payload)
        return Response(
            content=payload,
            media_type="application/json",
            headers={"X-Cache": "miss"},
        )

    @app.get("/export")
    async def export_endpoint(
        operation: str,
        dimension: str | None = None,
        metric: str | None = None,
        filters: str | None = None,
        format: str = "json",
        k: int | None = None,
        direction: str | None = None,
        selected_value: str | None = None,
        account=Depends(authenticated),
    ):
        if operation not in OPERATIONS:
            raise BadQuery(f"unknown operation: {operation!r}")
        if format not in ("csv", "json"):
            raise BadQuery(f"format must be csv or json, got {format!r}")
        params: dict = {"dimension": dimension, "metric": metric}
        if filters is not None:
            try:
                params["filters"] = json.loads(filters)
            except json.JSONDecodeError as exc:
                raise BadQuery(f"filters is not valid JSON: {exc}")
        if k is not None:
            params["k"] = k
        if direction is not None:
            params["direction"] = direction
        if selected_value is not None:
            params["selected_value"] = selected_value
        result = compute_aggregation(store, operation, params)
        if format == "json":
            return Response(
                content=canonical_json(result), media_type="application/json"
            )
        return Response(
            content=export_mod.to_csv(operation, result),
            media_type="text/csv",
            headers={"Content-Disposition": f"attachment; filename={operation}.csv"},
        )

    @app.post("/topics/jobs", status_code=202)
    async def submit_topic_job(body: dict, account=Depends(authenticated)):
        filter_set = parse_filters(body.get("filters"))
        k = body.get("k", 10)
        seed = body.get("seed", 0)
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise BadQuery("k must be a positive integer")
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise BadQuery("seed must be an integer")
        job_id = jobs.submit_job(filter_set, k=k, seed=seed)
        return {"job_id": job_id}

    @app.get("/topics/jobs/{job_id}")
    async def poll_topic_job(job_id: str, account=Depends(authenticated)):
        return jobs.poll_job(job_id)

    def _redact(payload: dict, account) -> dict:
        if account.role != "admin":
            payload = {k: v for k, v in payload.items() if k != "abstractText"}
        return payload

    @app.post("/admin/{collection}", status_code=201)
    async def create_record(collection: str, body: dict, account=Depends(authenticated)):
        auth.require_admin(account)
        return _write_record(collection, body, expect_existing=None)

    @app.get("/admin/{collection}/{record_id}")
    async def read_record(
        collection: str, record_id: str, account=Depends(authenticated)
    ):
        if collection == "publications":
            pub = store.get_publication(record_id)
            if pub is None:
                raise NotFound(record_id)
            return _redact(serialization.publication_to_dict(pub), account)
        if collection == "authors":
            author = store.get_author(record_id)
            if author is None:
                raise NotFound(record_id)
            return serialization.author_to_dict(author)
        if collection == "venues":
            venue = store.get_venue(record_id)
            if venue is None:
                raise NotFound(record_id)
            return serialization.venue_to_dict(venue)
        raise BadQuery(f"unknown collection: {collection!r}")

    @app.put("/admin/{collection}/{record_id}")
    async def update_record(
        collection: str, record_id: str, body: dict, account=Depends(authenticated)
    ):
        auth.require_admin(account)
        if body.get("id", record_id) != record_id:
            raise BadQuery("id in body does not match the path")
        body = dict(body)
        body["id"] = record_id
        return _write_record(collection, body, expect_existing=True)

    @app.delete("/admin/{collection}/{record_id}")
    async def delete_record(
        collection: str, record_id: str, account=Depends(authenticated)
    ):
        auth.require_admin(account)
        with store.write_batch():
            if collection == "publications":
                deleted = store.delete_publication(record_id)
            elif collection == "authors":
                deleted = store.delete_author(record_id)
            elif collection == "venues":
                deleted = store.delete_venue(record_id)
            else:
                raise BadQuery(f"unknown collection: {collection!r}")
        if not deleted:
            raise NotFound(record_id)
        return {"deleted": record_id}

    def _write_record(collection: str, body: dict, expect_existing: bool | None):
        if collection == "publications":
            try:
                pub = serialization.publication_from_dict(body)
            except (KeyError, ValueError, TypeError) as exc:
                raise BadQuery(f"malformed publication: {exc}")
            violations = validate(pub)
            if violations:
                raise BadQuery("; ".join(violations))
            if expect_existing and store.get_publication(pub.id) is None:
                raise NotFound(pub.id)
            with store.write_batch():
                store.upsert_publication(pub)
            return serialization.publication_to_dict(pub)
        if collection == "authors":
            try:
                author = serialization.author_from_dict(body)
            except (KeyError, ValueError, TypeError) as exc:
                raise BadQuery(f"malformed author: {exc}")
            violations = validate_author(author)
            if violations:
                raise BadQuery("; ".join(violations))
            if expect_existing and store.get_author(author.id) is None:
                raise NotFound(author.id)
            with store.write_batch():
                store.upsert_author(author)
            return serialization.author_to_dict(author)
        if collection == "venues":
            try:
                venue = serialization.venue_from_dict(body)
            except (KeyError, ValueError, TypeError) as exc:
                raise BadQuery(f"malformed venue: {exc}")
            violations = validate_venue(venue)
            if violations:
                raise BadQuery("; ".join(violations))
            if expect_existing and store.get_venue(venue.id) is None:
                raise NotFound(venue.id)
            with store.write_batch():
                store.upsert_venue(venue)
            return serialization.venue_to_dict(venue)
        raise BadQuery(f"unknown collection: {collection!r}")

    return app
