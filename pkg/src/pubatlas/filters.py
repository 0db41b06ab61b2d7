"""The eight-filter query surface and its boolean semantics.

Different filters combine with AND; values inside one textual filter with
OR; the two numeric filters are inclusive ranges. Textual matching is
exact-value and case-insensitive against denormalized display names —
regular expressions appear only in suggest(), never in filter application.

FilterSets are immutable; compiled predicates are pure functions and safe
to share across threads.
"""

from __future__ import annotations

import enum
import hashlib
import json
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .model import DocumentType, FieldOfStudy, Publication

ACCESS_TYPES = ("closed", "open")


class Dimension(enum.Enum):
    PAPER = "paper"
    AUTHOR = "author"
    VENUE = "venue"
    TYPE_OF_PAPER = "type_of_paper"
    FIELD_OF_STUDY = "field_of_study"
    PUBLISHER = "publisher"


class InvalidFilter(ValueError):
    """The filter payload is structurally wrong (bad range, bad key type)."""


class InvalidPattern(ValueError):
    """suggest() received a malformed regular expression."""


TEXTUAL_SLOTS = (
    "authors",
    "venues",
    "publishers",
    "types_of_paper",
    "fields_of_study",
    "access_types",
)
NUMERIC_SLOTS = ("year_range", "citation_range")


@dataclass(frozen=True)
class FilterSet:
    authors: tuple[str, ...] | None = None
    venues: tuple[str, ...] | None = None
    publishers: tuple[str, ...] | None = None
    types_of_paper: tuple[str, ...] | None = None
    fields_of_study: tuple[str, ...] | None = None
    access_types: tuple[str, ...] | None = None
    year_range: tuple[int, int] | None = None
    citation_range: tuple[int, int] | None = None

    def __post_init__(self):
        for slot in NUMERIC_SLOTS:
            bounds = getattr(self, slot)
            if bounds is not None:
                low, high = bounds
                if low > high:
                    raise InvalidFilter(f"{slot}: min {low} > max {high}")

    def is_empty(self) -> bool:
        return all(
            getattr(self, slot) is None for slot in TEXTUAL_SLOTS + NUMERIC_SLOTS
        )

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "FilterSet":
        """Parse the wire form: eight optional keys, absent key = inactive."""
        kwargs: dict = {}
        for key in data:
            if key not in TEXTUAL_SLOTS and key not in NUMERIC_SLOTS:
                raise InvalidFilter(f"unknown filter key: {key!r}")
        for slot in TEXTUAL_SLOTS:
            value = data.get(slot)
            if value is None:
                continue
            if not isinstance(value, (list, tuple)) or not all(
                isinstance(v, str) for v in value
            ):
                raise InvalidFilter(f"{slot}: expected a list of strings")
            kwargs[slot] = tuple(value)
        for slot in NUMERIC_SLOTS:
            value = data.get(slot)
            if value is None:
                continue
            if (
                not isinstance(value, (list, tuple))
                or len(value) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)
            ):
                raise InvalidFilter(f"{slot}: expected [min, max] integers")
            kwargs[slot] = (value[0], value[1])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        out: dict = {}
        for slot in TEXTUAL_SLOTS:
            value = getattr(self, slot)
            if value is not None:
                out[slot] = list(value)
        for slot in NUMERIC_SLOTS:
            value = getattr(self, slot)
            if value is not None:
                out[slot] = list(value)
        return out


def _fold(values: Iterable[str]) -> frozenset[str]:
    return frozenset(v.casefold() for v in values)


def publication_access_type(pub: Publication) -> str | None:
    if pub.open_access is None:
        return None
    return "open" if pub.open_access else "closed"


def compile_predicate(filter_set: FilterSet) -> Callable[[Publication], bool]:
    """Compile to a fast pure predicate with pre-folded value sets."""
    authors = _fold(filter_set.authors) if filter_set.authors is not None else None
    venues = _fold(filter_set.venues) if filter_set.venues is not None else None
    publishers = (
        _fold(filter_set.publishers) if filter_set.publishers is not None else None
    )
    types_of_paper = (
        _fold(filter_set.types_of_paper)
        if filter_set.types_of_paper is not None
        else None
    )
    fields_of_study = (
        _fold(filter_set.fields_of_study)
        if filter_set.fields_of_study is not None
        else None
    )
    access_types = (
        _fold(filter_set.access_types) if filter_set.access_types is not None else None
    )
    year_range = filter_set.year_range
    citation_range = filter_set.citation_range

    def predicate(pub: Publication) -> bool:
        if authors is not None:
            if not any(name.casefold() in authors for name in pub.author_names):
                return False
        if venues is not None:
            if pub.venue_name is None or pub.venue_name.casefold() not in venues:
                return False
        if publishers is not None:
            if pub.publisher is None or pub.publisher.casefold() not in publishers:
                return False
        if types_of_paper is not None:
            if pub.type_of_paper.value.casefold() not in types_of_paper:
                return False
        if fields_of_study is not None:
            fields = pub.fields_of_study or frozenset({FieldOfStudy.UNASSIGNED})
            if not any(f.value.casefold() in fields_of_study for f in fields):
                return False
        if access_types is not None:
            access = publication_access_type(pub)
            if access is None or access not in access_types:
                return False
        if year_range is not None:
            year = pub.year_published
            if year is None or not (year_range[0] <= year <= year_range[1]):
                return False
        if citation_range is not None:
            count = pub.in_citations_count
            if not (citation_range[0] <= count <= citation_range[1]):
                return False
        return True

    return predicate


def matches(publication: Publication, filter_set: FilterSet) -> bool:
    return compile_predicate(filter_set)(publication)


def canonical_key(
    operation: str,
    dimension: str | None,
    metric: str | None,
    filter_set: FilterSet,
    extras: Mapping[str, object] | None = None,
) -> str:
    """Cache key: identical for semantically equal queries.

    Textual lists are casefolded, deduplicated and sorted (matching is
    case-insensitive, so case variants are the same query); extras carry
    operation-specific parameters such as k or the co-occurrence value.
    """
    payload: dict = {
        "operation": operation,
        "dimension": dimension,
        "metric": metric,
        "filters": {},
    }
    for slot in TEXTUAL_SLOTS:
        values = getattr(filter_set, slot)
        if values is not None:
            payload["filters"][slot] = sorted(_fold(values))
    for slot in NUMERIC_SLOTS:
        bounds = getattr(filter_set, slot)
        if bounds is not None:
            payload["filters"][slot] = list(bounds)
    if extras:
        payload["extras"] = {k: extras[k] for k in sorted(extras)}
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


_FIXED_SUGGESTIONS: dict[str, tuple[str, ...]] = {
    "types_of_paper": tuple(sorted(t.value for t in DocumentType)),
    "fields_of_study": tuple(sorted(f.value for f in FieldOfStudy)),
    "access_types": ACCESS_TYPES,
}


def suggest(store, field: str, pattern: str, limit: int) -> list[str]:
    """Autocomplete values for one textual filter slot.

    Stored values matching the case-insensitive regular expression, ranked
    by occurrence count then lexicographically. The enum-backed slots return
    their fixed legal value list (lexicographic) filtered by the pattern.
    """
    if field not in TEXTUAL_SLOTS:
        raise InvalidFilter(f"not a textual filter slot: {field!r}")
    if limit < 1:
        raise InvalidFilter("limit must be positive")
    try:
        regex = re.compile(pattern, re.IGNORECASE)
    except re.error as exc:
        raise InvalidPattern(str(exc)) from exc

    fixed = _FIXED_SUGGESTIONS.get(field)
    if fixed is not None:
        return [value for value in fixed if regex.search(value)][:limit]

    if field == "authors":
        counts = store.index_values("author_names")
    elif field == "venues":
        counts = store.index_values("venue_name")
    else:  # publishers: no dedicated index, scan
        counts: dict[str, int] = {}
        for pub in store.scan():
            if pub.publisher is not None:
                counts[pub.publisher] = counts.get(pub.publisher, 0) + 1
    ranked = sorted(
        (value for value in counts if regex.search(value)),
        key=lambda value: (-counts[value], value),
    )
    return ranked[:limit]
