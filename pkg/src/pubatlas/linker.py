"""Internal citation-graph construction by fuzzy title matching.

Reference strings (pre-extracted from bibliographies) are matched against
corpus titles with normalized Levenshtein similarity; matches at or above
the configured threshold become (citing, cited) edges. The same machinery
matches extracted author-name strings to corpus authors, and a resampling
estimator measures the name-mismatch rate on labeled fixtures.

Matching is deterministic: best similarity wins, ties broken by the
lexicographically smallest id. Titles are case-folded and
whitespace-collapsed before comparison; everything else (hyphens vs spaces
included) counts as ordinary edits.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

_WHITESPACE = re.compile(r"\s+")


class InsufficientData(Exception):
    """Fewer labeled pairs than the requested without-replacement sample."""


@dataclass(frozen=True)
class LinkerConfig:
    min_similarity: float = 0.8
    case_fold: bool = True

    def __post_init__(self):
        if not 0.0 <= self.min_similarity <= 1.0:
            raise ValueError("min_similarity must lie in [0, 1]")


@dataclass
class CitationGraph:
    edges: set[tuple[str, str]] = field(default_factory=set)
    unmatched_references: int = 0

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def normalize_title(text: str, case_fold: bool = True) -> str:
    text = _WHITESPACE.sub(" ", text).strip()
    return text.casefold() if case_fold else text


def edit_distance(a: str, b: str) -> int:
    """Plain dynamic-programming Levenshtein distance (insert/delete/substitute)."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (ca != cb),
                )
            )
        previous = current
    return previous[-1]


def bounded_edit_distance(a: str, b: str, limit: int) -> int | None:
    """Edit distance if it is <= limit, else None.

    Banded DP: cells further than limit off the diagonal can never lead to a
    distance within the bound, so only a 2*limit+1 band is evaluated. Agrees
    exactly with edit_distance whenever that is <= limit.
    """
    if a == b:
        return 0
    if limit < 0:
        return None
    if len(a) < len(b):
        a, b = b, a
    if len(a) - len(b) > limit:
        return None
    if not b:
        return len(a)  # the length guard already proved len(a) <= limit
    big = limit + 1
    previous = [j if j <= limit else big for j in range(len(b) + 1)]
    for i in range(1, len(a) + 1):
        lo = max(1, i - limit)
        hi = min(len(b), i + limit)
        current = [i if i <= limit else big] + [big] * len(b)
        ca = a[i - 1]
        for j in range(lo, hi + 1):
            current[j] = min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != b[j - 1]),
            )
        if min(current[lo : hi + 1]) > limit:
            return None
        previous = current
    return previous[len(b)] if previous[len(b)] <= limit else None


def normalized_levenshtein(a: str, b: str) -> float:
    """1 - editDistance(a, b) / max(len(a), len(b)); 1.0 when both empty."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(a, b) / longest


class TitleIndex:
    """Corpus titles prepared for repeated matching.

    Keeps an exact-match table (normalized title -> smallest id) plus the
    full normalized list for the similarity scan. The scan prunes candidates
    whose length difference alone already caps similarity below threshold —
    an exact bound, so pruning never changes the result.
    """

    def __init__(self, titles_by_id: Mapping[str, str], case_fold: bool = True):
        self.case_fold = case_fold
        self._entries: list[tuple[str, str]] = []  # (normalized title, id)
        self._exact: dict[str, str] = {}
        for pub_id in sorted(titles_by_id):
            normalized = normalize_title(titles_by_id[pub_id], case_fold)
            self._entries.append((normalized, pub_id))
            self._exact.setdefault(normalized, pub_id)

    def best_match(
        self, reference_title: str, min_similarity: float
    ) -> tuple[str, float] | None:
        query = normalize_title(reference_title, self.case_fold)
        exact_id = self._exact.get(query)
        if exact_id is not None:
            return exact_id, 1.0
        best_id: str | None = None
        best_similarity = -1.0
        query_len = len(query)
        for normalized, pub_id in self._entries:
            longest = max(query_len, len(normalized))
            if longest == 0:
                similarity = 1.0
            else:
                # distance >= |length difference|, so a big length gap
                # proves similarity < threshold without running the DP;
                # the 1e-9 keeps the integer budget an over-approximation
                budget = int((1.0 - min_similarity) * longest + 1e-9)
                if abs(query_len - len(normalized)) > budget:
                    continue
                distance = bounded_edit_distance(query, normalized, budget)
                if distance is None:
                    continue
                similarity = 1.0 - distance / longest
            # entries are scanned in ascending id order, so a strict
            # comparison keeps the lexicographically smallest id on ties
            if similarity > best_similarity:
                best_id = pub_id
                best_similarity = similarity
        if best_id is None or best_similarity < min_similarity:
            return None
        return best_id, best_similarity


def match_reference(
    reference_title: str, index: TitleIndex, cfg: LinkerConfig
) -> str | None:
    """Id of the most similar corpus title at or above the threshold."""
    hit = index.best_match(reference_title, cfg.min_similarity)
    return hit[0] if hit else None


def build_citation_graph(
    references_by_id: Mapping[str, Sequence[str]],
    titles_by_id: Mapping[str, str],
    cfg: LinkerConfig | None = None,
) -> CitationGraph:
    """Link every reference string to a corpus title and collect the edges.

    references_by_id maps citing publication id -> raw reference titles;
    titles_by_id maps publication id -> title for the whole corpus. Duplicate
    references produce one edge; self-matches never become edges.
    """
    cfg = cfg or LinkerConfig()
    index = TitleIndex(titles_by_id, cfg.case_fold)
    graph = CitationGraph()
    for citer_id in sorted(references_by_id):
        for reference in references_by_id[citer_id]:
            cited_id = match_reference(reference, index, cfg)
            if cited_id is None:
                graph.unmatched_references += 1
            elif cited_id != citer_id:
                graph.edges.add((citer_id, cited_id))
    return graph


def apply_graph(store, graph: CitationGraph) -> None:
    """Write the graph's in/out id lists and recomputed counts to the store."""
    incoming: dict[str, list[str]] = {}
    outgoing: dict[str, list[str]] = {}
    for citer, cited in sorted(graph.edges):
        outgoing.setdefault(citer, []).append(cited)
        incoming.setdefault(cited, []).append(citer)
    with store.write_batch():
        for pub in store.all_publications():
            in_ids = tuple(sorted(incoming.get(pub.id, ())))
            out_ids = tuple(sorted(outgoing.get(pub.id, ())))
            store.upsert_publication(pub.with_citations(in_ids, out_ids))


def match_author_names(
    extracted_names: Iterable[str],
    authors_by_id: Mapping[str, str],
    cfg: LinkerConfig | None = None,
) -> list[tuple[str, str | None, float | None]]:
    """Pair each extracted name with the best-matching corpus author.

    Returns (extracted name, author id or None, similarity or None); names
    with no author at or above the threshold come back unmatched.
    """
    cfg = cfg or LinkerConfig()
    index = TitleIndex(authors_by_id, cfg.case_fold)
    results = []
    for name in extracted_names:
        hit = index.best_match(name, cfg.min_similarity)
        if hit is None:
            results.append((name, None, None))
        else:
            results.append((name, hit[0], hit[1]))
    return results


def estimate_mismatch_rate(
    pairs: Sequence[tuple[str, str]],
    sample_size: int = 100,
    draws: int = 20,
    seed: int = 0,
    with_replacement: bool = True,
) -> dict:
    """Resample (matched id, ground-truth id) pairs and rate the mismatches.

    Each draw samples sample_size pairs and computes the mismatched
    fraction; the result carries every per-draw rate plus their mean.
    """
    if not with_replacement and len(pairs) < sample_size:
        raise InsufficientData(
            f"{len(pairs)} pairs < sample size {sample_size} without replacement"
        )
    rng = random.Random(seed)
    rates = []
    for _ in range(draws):
        if with_replacement:
            sample = [pairs[rng.randrange(len(pairs))] for _ in range(sample_size)]
        else:
            sample = rng.sample(list(pairs), sample_size)
        mismatched = sum(1 for matched, truth in sample if matched != truth)
        rates.append(mismatched / sample_size)
    return {"mean_rate": sum(rates) / len(rates), "rates": rates}
