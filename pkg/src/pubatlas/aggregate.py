"""Aggregations behind the dashboards: per-year counts, entity grids,
distributions, top-k, citation bins, co-occurrence, activity windows.

Everything here is a pure function over an iterable of publications (the
caller filters first), so results compose exactly with the query filters.
Multi-valued dimensions (authors, fields of study) intentionally count a
publication once per value, so per-row totals may exceed the corpus size.

Publications lacking the dimension value are aggregated into a row named
"Others". Display averages are rounded half-up to two decimals; internal
arithmetic stays full-precision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping, Sequence

from .filters import Dimension
from .model import FieldOfStudy, Publication

OTHERS = "Others"


class Metric(enum.Enum):
    CITATIONS = "citations"
    PAPERS = "papers"


class EmptyInput(ValueError):
    """distribution() needs at least one value."""


@dataclass(frozen=True)
class YearSeries:
    """Counts per publication year plus an NA bucket for missing years."""

    years: tuple[tuple[int, int], ...]  # (year, count), years strictly increasing
    na: int = 0

    def total(self) -> int:
        return sum(count for _, count in self.years) + self.na

    def to_dict(self) -> dict:
        return {"years": [list(pair) for pair in self.years], "na": self.na}


@dataclass(frozen=True)
class GridRow:
    name: str
    first_year: int | None
    last_year: int | None
    papers: int
    citations: int
    avg_citations: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "first_year": self.first_year,
            "last_year": self.last_year,
            "papers": self.papers,
            "citations": self.citations,
            "avg_citations": self.avg_citations,
        }


@dataclass(frozen=True)
class DistributionSummary:
    min: float
    q1: float
    median: float
    q3: float
    max: float
    avg: float
    n: int

    def to_dict(self) -> dict:
        return {
            "min": self.min,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "max": self.max,
            "avg": self.avg,
            "n": self.n,
        }


BIN_LABELS = ("0", "1-9", "10-99", "100-999", "1000+")


@dataclass(frozen=True)
class BinCounts:
    counts: tuple[int, int, int, int, int]

    def to_dict(self) -> dict:
        return {label: count for label, count in zip(BIN_LABELS, self.counts)}

    def total(self) -> int:
        return sum(self.counts)


def display_average(citations: int, papers: int) -> float:
    """citations / papers rounded half-up to two decimals (0.0 when empty)."""
    if papers <= 0:
        return 0.0
    value = Decimal(citations) / Decimal(papers)
    return float(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def dimension_values(pub: Publication, dimension: Dimension) -> tuple[str, ...]:
    """Display values a publication contributes to a dimension; empty when
    the record lacks the value (those aggregate into Others)."""
    if dimension is Dimension.AUTHOR:
        return pub.author_names
    if dimension is Dimension.VENUE:
        return (pub.venue_name,) if pub.venue_name is not None else ()
    if dimension is Dimension.TYPE_OF_PAPER:
        return (pub.type_of_paper.value,)
    if dimension is Dimension.FIELD_OF_STUDY:
        return tuple(
            sorted(
                f.value
                for f in pub.fields_of_study
                if f is not FieldOfStudy.UNASSIGNED
            )
        )
    if dimension is Dimension.PUBLISHER:
        return (pub.publisher,) if pub.publisher is not None else ()
    raise ValueError(f"no entity values for dimension {dimension}")


def count_per_year(
    pubs: Iterable[Publication], dimension: Dimension = Dimension.PAPER
) -> YearSeries:
    """Publications per year, or distinct dimension values per year.

    For dimension=paper each publication counts once; otherwise a year
    counts its distinct entity values (e.g. unique authors). Publications
    without a year land in the NA bucket. A year with publications but no
    entity values still appears, with count 0 (the dashboard greys out
    zero-count year labels rather than dropping them).
    """
    if dimension is Dimension.PAPER:
        counts: dict[int, int] = {}
        na = 0
        for pub in pubs:
            if pub.year_published is None:
                na += 1
            else:
                counts[pub.year_published] = counts.get(pub.year_published, 0) + 1
        return YearSeries(tuple(sorted(counts.items())), na)
    seen: dict[int, set[str]] = {}
    seen_na: set[str] = set()
    for pub in pubs:
        values = dimension_values(pub, dimension)
        if pub.year_published is None:
            seen_na.update(values)
        else:
            seen.setdefault(pub.year_published, set()).update(values)
    return YearSeries(
        tuple(sorted((year, len(values)) for year, values in seen.items())),
        len(seen_na),
    )


def citation_totals_per_year(
    pubs: Iterable[Publication], direction: str = "in"
) -> YearSeries:
    """Summed incoming or outgoing citation counts per publication year."""
    if direction not in ("in", "out"):
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")
    counts: dict[int, int] = {}
    na = 0
    for pub in pubs:
        value = (
            pub.in_citations_count if direction == "in" else pub.out_citations_count
        )
        if pub.year_published is None:
            na += value
        else:
            counts[pub.year_published] = counts.get(pub.year_published, 0) + value
    return YearSeries(tuple(sorted(counts.items())), na)


def grid_rows(
    pubs: Iterable[Publication],
    dimension: Dimension,
    exclude_others: bool = False,
) -> list[GridRow]:
    """One row per distinct dimension value, sorted by name; publications
    lacking the value are merged into an "Others" row. A publication with k
    values contributes to k rows."""
    if dimension is Dimension.PAPER:
        raise ValueError("the papers grid lists raw records, not aggregates")
    papers: dict[str, int] = {}
    citations: dict[str, int] = {}
    first: dict[str, int] = {}
    last: dict[str, int] = {}
    for pub in pubs:
        values = dimension_values(pub, dimension) or (OTHERS,)
        for value in values:
            papers[value] = papers.get(value, 0) + 1
            citations[value] = citations.get(value, 0) + pub.in_citations_count
            year = pub.year_published
            if year is not None:
                if value not in first or year < first[value]:
                    first[value] = year
                if value not in last or year > last[value]:
                    last[value] = year
    rows = []
    for name in sorted(papers):
        if exclude_others and name == OTHERS:
            continue
        rows.append(
            GridRow(
                name=name,
                first_year=first.get(name),
                last_year=last.get(name),
                papers=papers[name],
                citations=citations[name],
                avg_citations=display_average(citations[name], papers[name]),
            )
        )
    return rows


def distribution(values: Sequence[float]) -> DistributionSummary:
    """Five-number summary plus average; quartiles by linear interpolation
    at p*(n-1) over the sorted values."""
    if not values:
        raise EmptyInput("distribution of zero values")
    ordered = sorted(float(v) for v in values)
    n = len(ordered)

    def quantile(p: float) -> float:
        position = p * (n - 1)
        lower = int(position)
        upper = min(lower + 1, n - 1)
        fraction = position - lower
        return ordered[lower] + (ordered[upper] - ordered[lower]) * fraction

    return DistributionSummary(
        min=ordered[0],
        q1=quantile(0.25),
        median=quantile(0.5),
        q3=quantile(0.75),
        max=ordered[-1],
        avg=sum(ordered) / n,
        n=n,
    )


def entity_metric_totals(
    pubs: Iterable[Publication], dimension: Dimension, metric: Metric
) -> dict[str, int]:
    """Per-entity metric totals (the shared core of top_k and boxplots)."""
    totals: dict[str, int] = {}
    for pub in pubs:
        values = dimension_values(pub, dimension) or (OTHERS,)
        weight = 1 if metric is Metric.PAPERS else pub.in_citations_count
        for value in values:
            totals[value] = totals.get(value, 0) + weight
    return totals


def top_k(
    pubs: Iterable[Publication],
    dimension: Dimension,
    metric: Metric,
    k: int,
    exclude_others: bool = False,
) -> list[tuple[str, int]]:
    """Top entities by metric, descending; ties break lexicographically.
    "Others" ranks as an ordinary entry unless excluded."""
    if k < 1:
        raise ValueError("k must be >= 1")
    totals = entity_metric_totals(pubs, dimension, metric)
    if exclude_others:
        totals.pop(OTHERS, None)
    ranked = sorted(totals.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]


def citation_bin_label(count: int) -> str:
    if count <= 0:
        return "0"
    if count <= 9:
        return "1-9"
    if count <= 99:
        return "10-99"
    if count <= 999:
        return "100-999"
    return "1000+"


def citation_bins(
    pubs: Iterable[Publication], direction: str = "in"
) -> BinCounts:
    """Partition publications into the 0 / 1-9 / 10-99 / 100-999 / 1000+
    bins by citation count; the bins always sum to the corpus size."""
    if direction not in ("in", "out"):
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")
    counts = {label: 0 for label in BIN_LABELS}
    for pub in pubs:
        value = (
            pub.in_citations_count if direction == "in" else pub.out_citations_count
        )
        counts[citation_bin_label(value)] += 1
    return BinCounts(tuple(counts[label] for label in BIN_LABELS))


def co_occurrence(
    pubs: Iterable[Publication], dimension: Dimension, selected_value: str
) -> dict[str, int]:
    """How often each other value shares a publication with the selected
    one. Defined for the multi-valued dimensions (authors, fields of study);
    the selected value never appears in its own result."""
    if dimension not in (Dimension.AUTHOR, Dimension.FIELD_OF_STUDY):
        raise ValueError(f"co-occurrence is undefined for dimension {dimension}")
    selected = selected_value.casefold()
    counts: dict[str, int] = {}
    for pub in pubs:
        values = dimension_values(pub, dimension)
        if not any(v.casefold() == selected for v in values):
            continue
        for value in values:
            if value.casefold() != selected:
                counts[value] = counts.get(value, 0) + 1
    return counts


def activity_window(
    pubs: Iterable[Publication],
    dimension: Dimension,
    window: tuple[int, int],
    full_range: tuple[int, int],
) -> dict[str, int]:
    """Entities active in the window, and entities new to it.

    new_count uses the inverted time span: distinct values over the full
    range minus distinct values seen before the window started.
    """
    y1, y2 = window
    y0, y_end = full_range
    if not (y0 <= y1 <= y2):
        raise ValueError("expected full-range start <= window start <= window end")
    if y_end != y2:
        raise ValueError("full range must end at the window end")
    in_window: set[str] = set()
    in_full: set[str] = set()
    before_window: set[str] = set()
    for pub in pubs:
        year = pub.year_published
        if year is None:
            continue
        if dimension is Dimension.PAPER:
            values: tuple[str, ...] = (pub.id,)
        else:
            values = dimension_values(pub, dimension)
        if y1 <= year <= y2:
            in_window.update(values)
        if y0 <= year <= y2:
            in_full.update(values)
        if y0 <= year <= y1 - 1:
            before_window.update(values)
    return {
        "active_count": len(in_window),
        "new_count": len(in_full) - len(before_window),
    }
