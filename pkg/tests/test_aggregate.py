import random
from decimal import ROUND_HALF_UP, Decimal

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pubatlas.aggregate import (
    OTHERS,
    BinCounts,
    DistributionSummary,
    EmptyInput,
    Metric,
    activity_window,
    citation_bin_label,
    citation_bins,
    citation_totals_per_year,
    co_occurrence,
    count_per_year,
    display_average,
    distribution,
    grid_rows,
    top_k,
)
from pubatlas.filters import Dimension

from conftest import make_publication, random_corpus


# --- reference (oracle) implementations, kept deliberately naive ---------------

def brute_values(pub, dimension):
    if dimension is Dimension.AUTHOR:
        return list(pub.author_names)
    if dimension is Dimension.VENUE:
        return [pub.venue_name] if pub.venue_name else []
    if dimension is Dimension.TYPE_OF_PAPER:
        return [pub.type_of_paper.value]
    if dimension is Dimension.FIELD_OF_STUDY:
        return sorted(f.value for f in pub.fields_of_study)
    if dimension is Dimension.PUBLISHER:
        return [pub.publisher] if pub.publisher else []
    raise AssertionError(dimension)


def brute_count_per_year(pubs, dimension):
    years, na = {}, 0
    if dimension is Dimension.PAPER:
        for p in pubs:
            if p.year_published is None:
                na += 1
            else:
                years[p.year_published] = years.get(p.year_published, 0) + 1
        return years, na
    by_year, na_set = {}, set()
    for p in pubs:
        values = brute_values(p, dimension)
        if p.year_published is None:
            na_set.update(values)
        else:
            # a year with publications renders even at zero distinct values
            by_year.setdefault(p.year_published, set()).update(values)
    return {y: len(s) for y, s in by_year.items()}, len(na_set)


def brute_grid(pubs, dimension):
    rows = {}
    for p in pubs:
        values = brute_values(p, dimension) or [OTHERS]
        for v in values:
            row = rows.setdefault(v, {"papers": 0, "citations": 0, "years": []})
            row["papers"] += 1
            row["citations"] += p.in_citations_count
            if p.year_published is not None:
                row["years"].append(p.year_published)
    return rows


def brute_top_k(pubs, dimension, metric, k):
    totals = {}
    for p in pubs:
        values = brute_values(p, dimension) or [OTHERS]
        for v in values:
            add = 1 if metric is Metric.PAPERS else p.in_citations_count
            totals[v] = totals.get(v, 0) + add
    ranked = sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]


def brute_bins(pubs):
    bins = {"0": 0, "1-9": 0, "10-99": 0, "100-999": 0, "1000+": 0}
    for p in pubs:
        c = p.in_citations_count
        if c == 0:
            bins["0"] += 1
        elif 1 <= c <= 9:
            bins["1-9"] += 1
        elif 10 <= c <= 99:
            bins["10-99"] += 1
        elif 100 <= c <= 999:
            bins["100-999"] += 1
        else:
            bins["1000+"] += 1
    return bins


def brute_co_occurrence(pubs, dimension, selected):
    out = {}
    for p in pubs:
        values = brute_values(p, dimension)
        if selected.casefold() not in [v.casefold() for v in values]:
            continue
        for v in values:
            if v.casefold() != selected.casefold():
                out[v] = out.get(v, 0) + 1
    return out


def brute_activity(pubs, dimension, window, full_range):
    def values_in(year_lo, year_hi):
        seen = set()
        for p in pubs:
            if p.year_published is None or not (year_lo <= p.year_published <= year_hi):
                continue
            if dimension is Dimension.PAPER:
                seen.add(p.id)
            else:
                seen.update(brute_values(p, dimension))
        return seen

    active = values_in(window[0], window[1])
    total = values_in(full_range[0], window[1])
    before = values_in(full_range[0], window[0] - 1)
    return {"active_count": len(active), "new_count": len(total) - len(before)}


# --- count_per_year --------------------------------------------------------------

def test_papers_per_year_with_na_bucket():
    pubs = [
        make_publication("p1", year_published=2020),
        make_publication("p2", year_published=2020),
        make_publication("p3", year_published=None),
    ]
    series = count_per_year(pubs, Dimension.PAPER)
    assert series.years == ((2020, 2),)
    assert series.na == 1


def test_unique_authors_per_year():
    pubs = [
        make_publication("p1", year_published=2020,
                         author_names=("A", "B"), author_ids=("a", "b")),
        make_publication("p2", year_published=2020,
                         author_names=("A",), author_ids=("a",)),
    ]
    series = count_per_year(pubs, Dimension.AUTHOR)
    assert series.years == ((2020, 2),)


def test_empty_corpus_series():
    series = count_per_year([], Dimension.PAPER)
    assert series.years == ()
    assert series.na == 0


def test_year_totals_partition_the_corpus(rng):
    corpus = random_corpus(rng, 250)
    series = count_per_year(corpus, Dimension.PAPER)
    assert series.total() == len(corpus)


def test_citation_totals_per_year():
    pubs = [
        make_publication("p1", year_published=2019, in_citations_count=4,
                         out_citations_count=7),
        make_publication("p2", year_published=2019, in_citations_count=1,
                         out_citations_count=0),
        make_publication("p3", year_published=None, in_citations_count=9),
    ]
    incoming = citation_totals_per_year(pubs, "in")
    assert incoming.years == ((2019, 5),)
    assert incoming.na == 9
    outgoing = citation_totals_per_year(pubs, "out")
    assert outgoing.years == ((2019, 7),)


# --- grid rows --------------------------------------------------------------------

def test_display_average_paper_values():
    assert display_average(15194, 122) == 124.54
    assert display_average(146867, 69) == 2128.51


def test_rounding_is_half_up():
    assert display_average(1, 8) == 0.13  # 0.125 rounds up, not to even
    assert display_average(25, 1000) == 0.03  # 0.025 rounds up


def test_two_unvenued_pubs_form_an_others_row():
    pubs = [
        make_publication("p1", venue_name=None, venue_id=None),
        make_publication("p2", venue_name=None, venue_id=None),
    ]
    rows = grid_rows(pubs, Dimension.VENUE)
    assert len(rows) == 1
    assert rows[0].name == OTHERS
    assert rows[0].papers == 2


def test_multi_author_publication_lands_in_every_author_row():
    pub = make_publication(
        "p1", author_names=("A", "B", "C"), author_ids=("a", "b", "c"),
        in_citations_count=6,
    )
    rows = grid_rows([pub], Dimension.AUTHOR)
    assert [r.name for r in rows] == ["A", "B", "C"]
    assert all(r.papers == 1 and r.citations == 6 for r in rows)


def test_first_and_last_year_bounds(rng):
    corpus = random_corpus(rng, 120)
    for row in grid_rows(corpus, Dimension.VENUE):
        if row.first_year is not None:
            assert row.first_year <= row.last_year


def test_grid_matches_brute_force(rng):
    corpus = random_corpus(rng, 150)
    for dimension in (Dimension.AUTHOR, Dimension.VENUE, Dimension.TYPE_OF_PAPER,
                      Dimension.FIELD_OF_STUDY, Dimension.PUBLISHER):
        expected = brute_grid(corpus, dimension)
        rows = grid_rows(corpus, dimension)
        assert {r.name for r in rows} == set(expected)
        for row in rows:
            exp = expected[row.name]
            assert row.papers == exp["papers"]
            assert row.citations == exp["citations"]
            assert row.first_year == (min(exp["years"]) if exp["years"] else None)
            assert row.last_year == (max(exp["years"]) if exp["years"] else None)
            want_avg = float(
                (Decimal(exp["citations"]) / Decimal(exp["papers"])).quantize(
                    Decimal("0.01"), rounding=ROUND_HALF_UP
                )
            )
            assert row.avg_citations == want_avg


def test_grid_total_citations_partition_by_document_type(rng):
    corpus = random_corpus(rng, 200)
    rows = grid_rows(corpus, Dimension.TYPE_OF_PAPER)
    assert sum(r.citations for r in rows) == sum(p.in_citations_count for p in corpus)
    assert sum(r.papers for r in rows) == len(corpus)


def test_grid_rejects_paper_dimension():
    with pytest.raises(ValueError):
        grid_rows([], Dimension.PAPER)


# --- distribution ------------------------------------------------------------------

def test_singleton_distribution():
    summary = distribution([5])
    assert summary == DistributionSummary(5, 5, 5, 5, 5, 5, 1)


def test_four_point_interpolation():
    summary = distribution([1, 2, 3, 4])
    assert summary.q1 == 1.75
    assert summary.median == 2.5
    assert summary.q3 == 3.25


def test_skewed_values():
    summary = distribution([0, 0, 1, 5, 100])
    assert summary.median == 1
    assert summary.avg == 21.2
    assert summary.min == 0
    assert summary.max == 100


def test_empty_input_raises():
    with pytest.raises(EmptyInput):
        distribution([])


@given(st.lists(st.integers(min_value=0, max_value=10_000), min_size=1, max_size=60))
@settings(max_examples=150)
def test_distribution_matches_numpy_and_orders(values):
    summary = distribution(values)
    assert summary.min <= summary.q1 <= summary.median <= summary.q3 <= summary.max
    q1, median, q3 = np.percentile(values, [25, 50, 75])
    assert summary.q1 == pytest.approx(q1)
    assert summary.median == pytest.approx(median)
    assert summary.q3 == pytest.approx(q3)


@given(st.lists(st.integers(min_value=0, max_value=999), min_size=1, max_size=40))
def test_distribution_is_permutation_invariant(values):
    shuffled = list(values)
    random.Random(0).shuffle(shuffled)
    assert distribution(values) == distribution(shuffled)


# --- top k -------------------------------------------------------------------------

def test_k_larger_than_population():
    pubs = [make_publication("p1", venue_name="ACL")]
    assert top_k(pubs, Dimension.VENUE, Metric.PAPERS, 10) == [("ACL", 1)]


def test_tie_breaks_lexicographically():
    pubs = [
        make_publication("p1", venue_name="X", in_citations_count=10),
        make_publication("p2", venue_name="Y", in_citations_count=10),
        make_publication("p3", venue_name="Z", in_citations_count=3),
    ]
    assert top_k(pubs, Dimension.VENUE, Metric.CITATIONS, 2) == [("X", 10), ("Y", 10)]


def test_top_k_matches_reference_counter(rng):
    corpus = random_corpus(rng, 500)
    for metric in (Metric.PAPERS, Metric.CITATIONS):
        got = top_k(corpus, Dimension.AUTHOR, metric, 8)
        assert got == brute_top_k(corpus, Dimension.AUTHOR, metric, 8)


def test_top_k_prefix_property(rng):
    corpus = random_corpus(rng, 200)
    shorter = top_k(corpus, Dimension.VENUE, Metric.CITATIONS, 4)
    longer = top_k(corpus, Dimension.VENUE, Metric.CITATIONS, 5)
    assert longer[:4] == shorter


def test_others_participates_unless_excluded():
    pubs = [
        make_publication("p1", venue_name=None, venue_id=None, in_citations_count=99),
        make_publication("p2", venue_name="ACL", in_citations_count=1),
    ]
    with_others = top_k(pubs, Dimension.VENUE, Metric.CITATIONS, 2)
    assert with_others[0] == (OTHERS, 99)
    without = top_k(pubs, Dimension.VENUE, Metric.CITATIONS, 2, exclude_others=True)
    assert without == [("ACL", 1)]


# --- citation bins ------------------------------------------------------------------

@pytest.mark.parametrize(
    "count,label",
    [
        (0, "0"),
        (1, "1-9"),
        (9, "1-9"),
        (10, "10-99"),
        (99, "10-99"),
        (100, "100-999"),
        (999, "100-999"),
        (1000, "1000+"),
        (10000, "1000+"),
    ],
)
def test_bin_boundaries(count, label):
    assert citation_bin_label(count) == label


def test_boundary_counts_fill_each_bin_once():
    pubs = [
        make_publication(f"p{i}", in_citations_count=c)
        for i, c in enumerate((0, 1, 10, 100, 1000))
    ]
    assert citation_bins(pubs) == BinCounts((1, 1, 1, 1, 1))


def test_bins_partition_random_corpus(rng):
    corpus = [
        make_publication(f"p{i}", in_citations_count=rng.randint(0, 5000))
        for i in range(1000)
    ]
    bins = citation_bins(corpus)
    assert bins.total() == 1000
    assert bins.to_dict() == brute_bins(corpus)


# --- co-occurrence ------------------------------------------------------------------

def _authored(pub_id, *names):
    return make_publication(
        pub_id, author_names=names, author_ids=tuple(f"a-{n}" for n in names)
    )


def test_co_author_counts():
    pubs = [_authored("p1", "A", "B"), _authored("p2", "A", "C")]
    assert co_occurrence(pubs, Dimension.AUTHOR, "A") == {"B": 1, "C": 1}


def test_solo_author_has_no_co_occurrences():
    pubs = [_authored("p1", "A"), _authored("p2", "A")]
    assert co_occurrence(pubs, Dimension.AUTHOR, "A") == {}


def test_multiplicity_is_counted():
    pubs = [_authored("p1", "A", "B"), _authored("p2", "A", "B")]
    assert co_occurrence(pubs, Dimension.AUTHOR, "A") == {"B": 2}


def test_co_occurrence_rejects_single_valued_dimensions():
    with pytest.raises(ValueError):
        co_occurrence([], Dimension.VENUE, "ACL")


def test_co_occurrence_matches_brute_force(rng):
    corpus = random_corpus(rng, 300)
    assert co_occurrence(corpus, Dimension.AUTHOR, "Ada Lovelace") == (
        brute_co_occurrence(corpus, Dimension.AUTHOR, "Ada Lovelace")
    )


# --- activity windows ----------------------------------------------------------------

def test_activity_window_example():
    pubs = [
        _authored("p1", "A"),
        _authored("p2", "B"),
        _authored("p3", "C"),
        _authored("p4", "C"),
    ]
    pubs[0] = make_publication("p1", year_published=2018, author_names=("A",), author_ids=("a",))
    pubs[1] = make_publication("p2", year_published=2020, author_names=("B",), author_ids=("b",))
    pubs[2] = make_publication("p3", year_published=2010, author_names=("C",), author_ids=("c",))
    pubs[3] = make_publication("p4", year_published=2020, author_names=("C",), author_ids=("c",))
    out = activity_window(pubs, Dimension.AUTHOR, (2019, 2020), (1936, 2020))
    assert out == {"active_count": 2, "new_count": 1}


def test_window_equal_to_full_range_makes_everything_new(rng):
    corpus = random_corpus(rng, 150)
    out = activity_window(corpus, Dimension.AUTHOR, (1936, 2100), (1936, 2100))
    assert out["new_count"] == out["active_count"]


def test_empty_corpus_activity():
    assert activity_window([], Dimension.AUTHOR, (2019, 2020), (1936, 2020)) == {
        "active_count": 0,
        "new_count": 0,
    }


def test_activity_matches_brute_force(rng):
    corpus = random_corpus(rng, 250)
    for window_start in (2012, 2016, 2020):
        got = activity_window(corpus, Dimension.VENUE, (window_start, 2022), (2010, 2022))
        assert got == brute_activity(corpus, Dimension.VENUE, (window_start, 2022), (2010, 2022))


# --- composition with the query filters ----------------------------------------------

def test_operations_compose_with_filters(rng):
    from pubatlas.filters import compile_predicate
    from test_filters import naive_matches, random_filter_set

    corpus = random_corpus(rng, 400)
    for _ in range(25):
        fs = random_filter_set(rng)
        predicate = compile_predicate(fs)
        filtered = [p for p in corpus if predicate(p)]
        brute_filtered = [p for p in corpus if naive_matches(p, fs)]

        series = count_per_year(filtered, Dimension.PAPER)
        years, na = brute_count_per_year(brute_filtered, Dimension.PAPER)
        assert dict(series.years) == years and series.na == na

        assert citation_bins(filtered).to_dict() == brute_bins(brute_filtered)
        assert top_k(filtered, Dimension.VENUE, Metric.CITATIONS, 5) == (
            brute_top_k(brute_filtered, Dimension.VENUE, Metric.CITATIONS, 5)
        )
