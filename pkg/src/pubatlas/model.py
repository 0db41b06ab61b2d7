"""Canonical domain types shared by every other module.

Publications carry denormalized author/venue display names next to the
referencing ids: names are authoritative for display, ids for identity.
All types are immutable value objects and safe to share across threads.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace

YEAR_MIN = 1936
YEAR_MAX = 2100

# venue display names are stored with occurrence counters already stripped
_COUNTER_SUFFIX = re.compile(r"\(\d+\)$")


class DocumentType(enum.Enum):
    """BibTeX entry class of a publication. Closed set; unknown raw values
    are an ingest error, never a silent fallback."""

    INPROCEEDINGS = "inproceedings"
    ARTICLE = "article"
    INCOLLECTION = "incollection"
    PROCEEDINGS = "proceedings"
    BOOK = "book"
    PHDTHESIS = "phdthesis"
    MASTERSTHESIS = "mastersthesis"


class FieldOfStudy(enum.Enum):
    """High-level research area. A publication may carry several; records
    with none set carry the UNASSIGNED sentinel so aggregations can bucket
    them without special-casing empties."""

    COMPUTER_SCIENCE = "Computer Science"
    MATHEMATICS = "Mathematics"
    ENGINEERING = "Engineering"
    MEDICINE = "Medicine"
    PSYCHOLOGY = "Psychology"
    PHYSICS = "Physics"
    BUSINESS = "Business"
    MATERIALS_SCIENCE = "Materials Science"
    BIOLOGY = "Biology"
    ECONOMICS = "Economics"
    SOCIOLOGY = "Sociology"
    ENVIRONMENTAL_SCIENCE = "Environmental Science"
    CHEMISTRY = "Chemistry"
    GEOLOGY = "Geology"
    GEOGRAPHY = "Geography"
    POLITICAL_SCIENCE = "Political Science"
    PHILOSOPHY = "Philosophy"
    ART = "Art"
    HISTORY = "History"
    UNASSIGNED = "Unassigned"


@dataclass(frozen=True)
class Author:
    id: str
    full_name: str
    number: str | None = None  # 4-digit disambiguation counter, kept as text
    orcid: str | None = None


@dataclass(frozen=True)
class Venue:
    id: str
    names: tuple[str, ...]


@dataclass(frozen=True)
class Publication:
    id: str
    title: str
    abstract_text: str | None = None
    year_published: int | None = None
    author_ids: tuple[str, ...] = ()
    author_names: tuple[str, ...] = ()
    venue_id: str | None = None
    venue_name: str | None = None
    publisher: str | None = None
    type_of_paper: DocumentType = DocumentType.ARTICLE
    fields_of_study: frozenset[FieldOfStudy] = frozenset()
    in_citation_ids: tuple[str, ...] = ()
    in_citations_count: int = 0
    out_citation_ids: tuple[str, ...] = ()
    out_citations_count: int = 0
    open_access: bool | None = None
    dblp_id: str | None = None
    doi: str | None = None
    url: str | None = None

    def with_citations(
        self,
        in_ids: tuple[str, ...] | None = None,
        out_ids: tuple[str, ...] | None = None,
    ) -> "Publication":
        """Return a copy with citation id lists replaced and counts recomputed."""
        changes: dict = {}
        if in_ids is not None:
            changes["in_citation_ids"] = in_ids
            changes["in_citations_count"] = len(in_ids)
        if out_ids is not None:
            changes["out_citation_ids"] = out_ids
            changes["out_citations_count"] = len(out_ids)
        return replace(self, **changes)


def validate(publication: Publication) -> list[str]:
    """Check record-level invariants; returns one description per violation.

    Reports, never raises. Corpus-level uniqueness of ids is enforced by the
    store's primary-key semantics, not here. Citation counts may stand alone
    (id lists dropped for space), but a non-empty id list must agree with its
    count.
    """
    violations: list[str] = []
    if not publication.id:
        violations.append("id: must be non-empty")
    if not publication.title:
        violations.append("title: must be non-empty")
    if publication.author_names and len(publication.author_names) != len(
        publication.author_ids
    ):
        violations.append(
            "author_names: length %d does not match author_ids length %d"
            % (len(publication.author_names), len(publication.author_ids))
        )
    year = publication.year_published
    if year is not None and not (YEAR_MIN <= year <= YEAR_MAX):
        violations.append(
            "year_published: %d outside [%d, %d]" % (year, YEAR_MIN, YEAR_MAX)
        )
    if publication.in_citations_count < 0:
        violations.append("in_citations_count: negative")
    if publication.out_citations_count < 0:
        violations.append("out_citations_count: negative")
    if publication.in_citation_ids and publication.in_citations_count != len(
        publication.in_citation_ids
    ):
        violations.append(
            "in_citations_count: %d does not match %d in_citation_ids"
            % (publication.in_citations_count, len(publication.in_citation_ids))
        )
    if publication.out_citation_ids and publication.out_citations_count != len(
        publication.out_citation_ids
    ):
        violations.append(
            "out_citations_count: %d does not match %d out_citation_ids"
            % (publication.out_citations_count, len(publication.out_citation_ids))
        )
    return violations


def validate_author(author: Author) -> list[str]:
    violations = []
    if not author.id:
        violations.append("id: must be non-empty")
    if not author.full_name:
        violations.append("full_name: must be non-empty")
    return violations


def validate_venue(venue: Venue) -> list[str]:
    violations = []
    if not venue.id:
        violations.append("id: must be non-empty")
    if not venue.names:
        violations.append("names: must be non-empty")
    for name in venue.names:
        if _COUNTER_SUFFIX.search(name.rstrip()):
            violations.append(
                f"names: {name!r} still ends with an occurrence counter"
            )
    return violations
