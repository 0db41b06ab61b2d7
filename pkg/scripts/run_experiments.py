#!/usr/bin/env python3
"""Run the standard experiment battery over a data directory and print the
tables: per-year counts, activity windows, per-period distributions, top-k,
citation bins, and the document-type split.

Period tables are produced the way the engine intends: one filtered query
per period, composed by this caller.

Usage:
    python scripts/run_experiments.py --data-dir demo-data [--top 10]
"""

from __future__ import annotations

import argparse

from pubatlas.aggregate import (
    Metric,
    activity_window,
    citation_bins,
    count_per_year,
    distribution,
    entity_metric_totals,
    grid_rows,
    top_k,
)
from pubatlas.filters import Dimension, FilterSet, compile_predicate
from pubatlas.store import Store

PERIODS = [
    (1960, 1969), (1970, 1979), (1980, 1989), (1990, 1999),
    (2000, 2004), (2005, 2009), (2010, 2014), (2015, 2019),
]


def header(title: str) -> None:
    print(f"\n== {title} ==")


def per_year(store: Store) -> None:
    header("publications per year")
    series = count_per_year(store.scan(), Dimension.PAPER)
    for year, count in series.years[-15:]:
        print(f"  {year}: {count}")
    if series.na:
        print(f"  NA: {series.na}")


def activity(store: Store, dimension: Dimension, label: str) -> None:
    header(f"active / new {label} (windows ending 2020)")
    pubs = store.all_publications()
    print(f"  {'span':>12} {'active':>8} {'new':>8}")
    for span in (1, 2, 3, 4, 5):
        window = (2020 - span + 1, 2020)
        out = activity_window(pubs, dimension, window, (1936, 2020))
        print(f"  {window[0]}-{window[1]:>5} {out['active_count']:>8} {out['new_count']:>8}")


def period_distributions(store: Store, dimension: Dimension, label: str) -> None:
    header(f"citation distribution across {label} per period")
    print(f"  {'period':>10} {'q1':>8} {'median':>8} {'q3':>8} {'max':>10} {'avg':>10}")
    for start, end in PERIODS:
        predicate = compile_predicate(FilterSet(year_range=(start, end)))
        totals = entity_metric_totals(store.scan(predicate), dimension, Metric.CITATIONS)
        totals.pop("Others", None)
        if not totals:
            continue
        summary = distribution(list(totals.values()))
        print(
            f"  {start}-{end} {summary.q1:>8.0f} {summary.median:>8.0f}"
            f" {summary.q3:>8.0f} {summary.max:>10.0f} {summary.avg:>10.2f}"
        )


def top_tables(store: Store, k: int) -> None:
    for dimension, metric in (
        (Dimension.AUTHOR, Metric.CITATIONS),
        (Dimension.AUTHOR, Metric.PAPERS),
        (Dimension.VENUE, Metric.CITATIONS),
        (Dimension.VENUE, Metric.PAPERS),
    ):
        header(f"top {k} {dimension.value}s by {metric.value}")
        for rank, (name, value) in enumerate(
            top_k(store.all_publications(), dimension, metric, k), start=1
        ):
            print(f"  {rank:>2}. {name:<32} {value:>10,}")


def bins_table(store: Store) -> None:
    header("incoming-citation bins")
    bins = citation_bins(store.scan())
    total = bins.total() or 1
    for label, count in bins.to_dict().items():
        print(f"  {label:>8}: {count:>8} ({100 * count / total:.2f}%)")


def document_types(store: Store) -> None:
    header("document-type split")
    rows = grid_rows(store.all_publications(), Dimension.TYPE_OF_PAPER)
    rows.sort(key=lambda r: -r.papers)
    print(f"  {'type':>15} {'first':>6} {'papers':>8} {'citations':>10} {'avg':>8}")
    for row in rows:
        first = row.first_year if row.first_year is not None else "-"
        print(
            f"  {row.name:>15} {first:>6} {row.papers:>8,} {row.citations:>10,}"
            f" {row.avg_citations:>8.2f}"
        )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", required=True)
    parser.add_argument("--top", type=int, default=10)
    args = parser.parse_args()

    store = Store(args.data_dir)
    print(f"loaded {store.count_publications()} publications, "
          f"{store.count_authors()} authors, {store.count_venues()} venues")
    per_year(store)
    activity(store, Dimension.AUTHOR, "authors")
    activity(store, Dimension.VENUE, "venues")
    period_distributions(store, Dimension.AUTHOR, "authors")
    period_distributions(store, Dimension.VENUE, "venues")
    top_tables(store, args.top)
    bins_table(store)
    document_types(store)


if __name__ == "__main__":
    main()
