"""Command-line surface: ingest, link, serve, query, topics, export.

The data directory comes from --data-dir or PUBATLAS_DATA_DIR (flag wins);
the server port from --port or PUBATLAS_PORT. One-shot commands print JSON
(or CSV for export) to stdout.
"""

from __future__ import annotations

import json
import sys

import click

from . import aggregate as agg  # noqa: F401  (re-exported for scripts)
from . import filters as qf
from . import linker
from .ingest import IoError, load_path
from .service.app import BadQuery, compute_aggregation, create_app
from .service.auth import AuthManager
from .store import Store
from .topics import JobManager


def _open_store(data_dir: str | None) -> Store:
    return Store(data_dir)


data_dir_option = click.option(
    "--data-dir",
    envvar="PUBATLAS_DATA_DIR",
    default=None,
    help="Directory for the persistent collections (in-memory if omitted).",
)


@click.group()
def main():
    """Scholarly publication metadata analytics."""


@main.command()
@click.option("--input", "input_path", required=True, help="Corpus file to load.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["jsonl", "csv"]),
    default="jsonl",
    show_default=True,
)
@click.option("--report", "report_path", default=None, help="Write the ingest report JSON here.")
@data_dir_option
def ingest(input_path, fmt, report_path, data_dir):
    """Load a corpus file into the store."""
    store = _open_store(data_dir)
    try:
        report = load_path(input_path, store, fmt)
    except IoError as exc:
        raise click.ClickException(f"cannot read {input_path}: {exc}")
    payload = json.dumps(report.to_dict(), indent=2)
    if report_path:
        with open(report_path, "w", encoding="utf-8") as handle:
            handle.write(payload + "\n")
    click.echo(payload)


@main.command()
@click.option(
    "--references",
    "references_path",
    required=True,
    help="JSONL of {id, references: [raw titles]} per citing publication.",
)
@click.option("--min-similarity", default=0.8, show_default=True)
@click.option("--report", "report_path", default=None)
@data_dir_option
def link(references_path, min_similarity, report_path, data_dir):
    """Build the internal citation graph from reference strings."""
    store = _open_store(data_dir)
    references = {}
    with open(references_path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            references[row["id"]] = list(row.get("references", ()))
    titles = {pub.id: pub.title for pub in store.scan()}
    cfg = linker.LinkerConfig(min_similarity=min_similarity)
    graph = linker.build_citation_graph(references, titles, cfg)
    linker.apply_graph(store, graph)
    total_refs = sum(len(refs) for refs in references.values())
    report = {
        "edges": graph.edge_count,
        "unmatched_references": graph.unmatched_references,
        "external_reference_fraction": (
            graph.unmatched_references / total_refs if total_refs else 0.0
        ),
    }
    payload = json.dumps(report, indent=2)
    if report_path:
        with open(report_path, "w", encoding="utf-8") as handle:
            handle.write(payload + "\n")
    click.echo(payload)


@main.command()
@click.option("--port", envvar="PUBATLAS_PORT", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--workers", envvar="PUBATLAS_WORKERS", default=2, show_default=True, type=int)
@data_dir_option
def serve(port, host, workers, data_dir):
    """Run the HTTP API (seeds the admin account from
    PUBATLAS_ADMIN_USER / PUBATLAS_ADMIN_PASSWORD on first boot)."""
    import os

    import uvicorn

    from .service.app import ServiceConfig

    config = ServiceConfig(port=port, data_dir=data_dir, workers=workers)
    store = _open_store(config.data_dir)
    users_path = None
    if config.data_dir is not None:
        os.makedirs(config.data_dir, exist_ok=True)
        users_path = f"{config.data_dir}/users.json"
    auth = AuthManager(users_path=users_path)
    auth.seed_admin_from_env()
    app = create_app(store, auth=auth, workers=config.workers)
    uvicorn.run(app, host=host, port=config.port)


@main.command()
@click.option("--operation", required=True)
@click.option("--dimension", default=None)
@click.option("--metric", default=None)
@click.option("--filters", "filters_json", default=None, help="FilterSet as JSON.")
@click.option("--k", default=None, type=int)
@click.option("--direction", default=None, type=click.Choice(["in", "out"]))
@click.option("--selected-value", default=None)
@click.option("--window", default=None, help="start,end years")
@click.option("--full-range", default=None, help="start,end years")
@data_dir_option
def query(
    operation,
    dimension,
    metric,
    filters_json,
    k,
    direction,
    selected_value,
    window,
    full_range,
    data_dir,
):
    """One-shot aggregation printed as JSON."""
    store = _open_store(data_dir)
    params = _build_params(
        dimension, metric, filters_json, k, direction, selected_value, window, full_range
    )
    try:
        result = compute_aggregation(store, operation, params)
    except (BadQuery, qf.InvalidFilter) as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(result, indent=2, sort_keys=True))


@main.command()
@click.option("--operation", required=True)
@click.option("--dimension", default=None)
@click.option("--metric", default=None)
@click.option("--filters", "filters_json", default=None)
@click.option("--k", default=None, type=int)
@click.option("--direction", default=None, type=click.Choice(["in", "out"]))
@click.option("--selected-value", default=None)
@click.option("--window", default=None)
@click.option("--full-range", default=None)
@click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)
@data_dir_option
def export(
    operation,
    dimension,
    metric,
    filters_json,
    k,
    direction,
    selected_value,
    window,
    full_range,
    fmt,
    data_dir,
):
    """One-shot aggregation exported as CSV (or JSON) to stdout."""
    from .service.export import to_csv

    store = _open_store(data_dir)
    params = _build_params(
        dimension, metric, filters_json, k, direction, selected_value, window, full_range
    )
    try:
        result = compute_aggregation(store, operation, params)
    except (BadQuery, qf.InvalidFilter) as exc:
        raise click.ClickException(str(exc))
    if fmt == "json":
        click.echo(json.dumps(result, indent=2, sort_keys=True))
    else:
        sys.stdout.write(to_csv(operation, result))


@main.command()
@click.option("--k", default=10, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--filters", "filters_json", default=None)
@data_dir_option
def topics(k, seed, filters_json, data_dir):
    """One-shot topic-model training; prints the visualization payload."""
    store = _open_store(data_dir)
    filter_set = (
        qf.FilterSet.from_dict(json.loads(filters_json)) if filters_json else qf.FilterSet()
    )
    manager = JobManager(store, workers=1)
    try:
        payload = manager.run_sync(filter_set, k=k, seed=seed)
    finally:
        manager.shutdown()
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _build_params(
    dimension, metric, filters_json, k, direction, selected_value, window, full_range
) -> dict:
    params: dict = {}
    if dimension is not None:
        params["dimension"] = dimension
    if metric is not None:
        params["metric"] = metric
    if filters_json is not None:
        try:
            params["filters"] = json.loads(filters_json)
        except json.JSONDecodeError as exc:
            raise click.ClickException(f"--filters is not valid JSON: {exc}")
    if k is not None:
        params["k"] = k
    if direction is not None:
        params["direction"] = direction
    if selected_value is not None:
        params["selected_value"] = selected_value
    if window is not None:
        params["window"] = _parse_span(window, "--window")
    if full_range is not None:
        params["full_range"] = _parse_span(full_range, "--full-range")
    return params


def _parse_span(raw: str, what: str) -> list[int]:
    try:
        start, end = raw.split(",")
        return [int(start), int(end)]
    except ValueError:
        raise click.ClickException(f"{what} must look like 2016,2020")


if __name__ == "__main__":
    main()
