"""Corpus ingestion: line-delimited records in, validated publications out.

The input is UTF-8 JSONL, one record per line, using the source field names
(id, title, abstractText, yearPublished, authors, authorIds, venue,
booktitle, journal, venueId, publisher, typeOfPaper, fieldsOfStudy,
inCitations, inCitationsCount, outCitations, outCitationsCount, openAccess,
dblpId, doi, url). Unknown keys (e.g. "pages") are dropped silently. A CSV
adapter maps columns to the same shape; list-valued cells hold JSON arrays.

Records that fail validation are skipped and counted by reason — a large
corpus must survive sporadic corruption. Loading is idempotent: records
upsert by id, and re-loading the same file leaves the store unchanged.
"""

from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from .model import (
    Author,
    DocumentType,
    FieldOfStudy,
    Publication,
    Venue,
    validate,
)

RawRecord = Mapping[str, object]

_TRAILING_COUNTER = re.compile(r"\s*\(\d+\)\s*$")

# Raw keys consumed from source records; everything else is ignored.
_KNOWN_KEYS = frozenset(
    {
        "id",
        "title",
        "abstractText",
        "yearPublished",
        "authors",
        "authorIds",
        "venue",
        "booktitle",
        "journal",
        "venueId",
        "publisher",
        "typeOfPaper",
        "fieldsOfStudy",
        "inCitations",
        "inCitationsCount",
        "outCitations",
        "outCitationsCount",
        "openAccess",
        "dblpId",
        "doi",
        "url",
    }
)

_FIELD_BY_NAME = {f.value: f for f in FieldOfStudy}
_TYPE_BY_NAME = {t.value: t for t in DocumentType}


class IngestError(Exception):
    """A record-level problem; the record is rejected, the batch continues.

    reason is a stable counting key; detail carries the offending value.
    """

    def __init__(self, reason: str, detail: str | None = None):
        super().__init__(reason if detail is None else f"{reason}: {detail}")
        self.reason = reason


class BothFieldsPresent(IngestError):
    """booktitle and journal set on the same record — corrupt source data."""

    def __init__(self, detail: str | None = None):
        super().__init__("booktitle and journal both present", detail)


class UnresolvedReference(IngestError):
    """A referenced author/venue id has no record to denormalize from."""

    def __init__(self, ref_id: str):
        super().__init__("unresolved reference", repr(ref_id))
        self.ref_id = ref_id


@dataclass
class IngestReport:
    records_read: int = 0
    records_accepted: int = 0
    records_rejected: int = 0
    overwritten: int = 0
    rejection_reasons: Counter = field(default_factory=Counter)

    def reject(self, reason: str) -> None:
        self.records_rejected += 1
        self.rejection_reasons[reason] += 1

    def to_dict(self) -> dict:
        return {
            "records_read": self.records_read,
            "records_accepted": self.records_accepted,
            "records_rejected": self.records_rejected,
            "overwritten": self.overwritten,
            "rejection_reasons": dict(self.rejection_reasons),
        }


def merge_venue_fields(
    booktitle: str | None, journal: str | None
) -> str | None:
    """Merge the conference/journal name fields into one venue name.

    Conferences use booktitle, journals use journal; a well-formed record
    never sets both.
    """
    if booktitle and journal:
        raise BothFieldsPresent(
            f"booktitle={booktitle!r} and journal={journal!r}"
        )
    return booktitle or journal or None


def normalize_venue_name(raw: str) -> str:
    """Strip a single trailing " (<integer>)" occurrence counter.

    "HCI (42)" -> "HCI"; interior parenthesized numbers and non-numeric
    suffixes like "ACL (demo)" are left alone. Idempotent.
    """
    return _TRAILING_COUNTER.sub("", raw).rstrip()


def denormalize_names(
    publication: Publication,
    author_lookup: Callable[[str], Author | None],
    venue_lookup: Callable[[str], Venue | None],
) -> Publication:
    """Copy display names for the referenced author/venue ids into the record.

    Names land in positional correspondence with author_ids; the venue name
    is the venue's first display name. Raises UnresolvedReference on a
    dangling id.
    """
    names = []
    for author_id in publication.author_ids:
        author = author_lookup(author_id)
        if author is None:
            raise UnresolvedReference(author_id)
        names.append(author.full_name)
    venue_name = publication.venue_name
    if publication.venue_id is not None:
        venue = venue_lookup(publication.venue_id)
        if venue is None:
            raise UnresolvedReference(publication.venue_id)
        venue_name = venue.names[0]
    from dataclasses import replace

    return replace(
        publication, author_names=tuple(names), venue_name=venue_name
    )


def _as_str_list(value: object, what: str) -> list[str]:
    if value is None:
        return []
    if isinstance(value, str):
        # CSV cells carry JSON arrays for list fields
        value = json.loads(value) if value.startswith("[") else [value]
    if not isinstance(value, (list, tuple)):
        raise IngestError(f"{what}: expected a list")
    return [str(v) for v in value]


def _as_optional_int(value: object, what: str) -> int | None:
    if value is None or value == "":
        return None
    try:
        return int(value)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        raise IngestError(f"{what} not an integer", repr(value))


def _as_optional_bool(value: object) -> bool | None:
    if value is None or value == "":
        return None
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        if value.lower() in ("true", "1"):
            return True
        if value.lower() in ("false", "0"):
            return False
    raise IngestError("openAccess not a boolean", repr(value))


def _opt_text(raw: RawRecord, key: str) -> str | None:
    value = raw.get(key)
    if value is None or value == "":
        return None
    return str(value)


@dataclass(frozen=True)
class ParsedRecord:
    """One accepted raw line, split into its publication and the author/venue
    entities embedded in it (id/name pairs carried on the publication line)."""

    publication: Publication
    authors: tuple[Author, ...]
    venue: Venue | None


def parse_record(raw: RawRecord) -> ParsedRecord:
    """Turn one raw key-value record into domain objects.

    Raises IngestError (or a subclass) when the record is malformed; the
    caller counts the reason and moves on.
    """
    record_id = _opt_text(raw, "id")
    if not record_id:
        raise IngestError("missing id")
    title = _opt_text(raw, "title")
    if not title:
        raise IngestError("missing title")

    author_ids = _as_str_list(raw.get("authorIds"), "authorIds")
    author_names = _as_str_list(raw.get("authors"), "authors")
    authors: tuple[Author, ...] = ()
    if author_names and not author_ids:
        # Name-only record: derive stable ids. DBLP display names already
        # carry the four-digit homonym counter, so name-keyed identity is
        # consistent with the source's own disambiguation.
        author_ids = ["author:" + name for name in author_names]
    if author_names:
        if len(author_names) != len(author_ids):
            raise IngestError("authors and authorIds lengths differ")
        authors = tuple(
            Author(id=a_id, full_name=name)
            for a_id, name in zip(author_ids, author_names)
        )

    venue_name = _opt_text(raw, "venue")
    if venue_name is None:
        venue_name = merge_venue_fields(
            _opt_text(raw, "booktitle"), _opt_text(raw, "journal")
        )
    if venue_name is not None:
        venue_name = normalize_venue_name(venue_name)
        if not venue_name:
            raise IngestError("venue name empty after normalization")
    venue_id = _opt_text(raw, "venueId")
    venue = None
    if venue_id is not None and venue_name is not None:
        venue = Venue(id=venue_id, names=(venue_name,))
    if venue_id is None and venue_name is not None:
        # Name without id: derive a stable id from the normalized name so
        # repeated loads upsert the same venue entity.
        venue_id = "venue:" + venue_name.casefold()
        venue = Venue(id=venue_id, names=(venue_name,))

    type_raw = _opt_text(raw, "typeOfPaper")
    if type_raw is None:
        doc_type = DocumentType.ARTICLE
    else:
        try:
            doc_type = _TYPE_BY_NAME[type_raw.lower()]
        except KeyError:
            raise IngestError("unknown typeOfPaper", repr(type_raw))

    fields = frozenset()
    fields_raw = _as_str_list(raw.get("fieldsOfStudy"), "fieldsOfStudy")
    if fields_raw:
        parsed = []
        for name in fields_raw:
            try:
                parsed.append(_FIELD_BY_NAME[name])
            except KeyError:
                raise IngestError("unknown fieldOfStudy", repr(name))
        fields = frozenset(parsed)

    in_ids = tuple(_as_str_list(raw.get("inCitations"), "inCitations"))
    out_ids = tuple(_as_str_list(raw.get("outCitations"), "outCitations"))
    in_count = _as_optional_int(raw.get("inCitationsCount"), "inCitationsCount")
    out_count = _as_optional_int(
        raw.get("outCitationsCount"), "outCitationsCount"
    )
    publication = Publication(
        id=record_id,
        title=title,
        abstract_text=_opt_text(raw, "abstractText"),
        year_published=_as_optional_int(raw.get("yearPublished"), "yearPublished"),
        author_ids=tuple(author_ids),
        author_names=tuple(author_names),
        venue_id=venue_id,
        venue_name=venue_name,
        publisher=_opt_text(raw, "publisher"),
        type_of_paper=doc_type,
        fields_of_study=fields,
        in_citation_ids=in_ids,
        in_citations_count=in_count if in_count is not None else len(in_ids),
        out_citation_ids=out_ids,
        out_citations_count=out_count if out_count is not None else len(out_ids),
        open_access=_as_optional_bool(raw.get("openAccess")),
        dblp_id=_opt_text(raw, "dblpId"),
        doi=_opt_text(raw, "doi"),
        url=_opt_text(raw, "url"),
    )
    return ParsedRecord(publication=publication, authors=authors, venue=venue)


def iter_jsonl(stream: Iterable[str]) -> Iterator[RawRecord]:
    for line in stream:
        line = line.strip()
        if not line:
            continue
        yield json.loads(line)


def iter_csv(stream: Iterable[str]) -> Iterator[RawRecord]:
    """Thin adapter: CSV columns map to the same raw key set as JSONL."""
    reader = csv.DictReader(stream)
    for row in reader:
        yield {k: v for k, v in row.items() if v not in (None, "")}


def load_corpus(source: Iterable[RawRecord], store) -> IngestReport:
    """Parse, validate, denormalize and persist every record of a stream.

    Accepted records are upserted by id under one write batch; rejected
    records are counted by reason and never abort the load.
    """
    report = IngestReport()
    with store.write_batch():
        for raw in source:
            report.records_read += 1
            if "__malformed__" in raw:
                report.reject("malformed line")
                continue
            try:
                parsed = parse_record(raw)
            except IngestError as exc:
                report.reject(exc.reason)
                continue
            for author in parsed.authors:
                store.upsert_author(author)
            if parsed.venue is not None:
                store.upsert_venue(parsed.venue)
            try:
                publication = denormalize_names(
                    parsed.publication, store.get_author, store.get_venue
                )
            except UnresolvedReference as exc:
                report.reject(exc.reason)
                continue
            violations = validate(publication)
            if violations:
                report.reject(violations[0].split(":", 1)[0] + ": invalid")
                continue
            if store.upsert_publication(publication):
                report.overwritten += 1
            report.records_accepted += 1
    return report


def load_path(path: str, store, fmt: str = "jsonl") -> IngestReport:
    """Load a corpus file; fmt is "jsonl" or "csv"."""
    try:
        handle = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise IoError(str(exc)) from exc
    with handle:
        records = iter_csv(handle) if fmt == "csv" else _iter_jsonl_tolerant(handle)
        return load_corpus(records, store)


class IoError(Exception):
    """The source stream could not be read at all."""


def _iter_jsonl_tolerant(stream: Iterable[str]) -> Iterator[RawRecord]:
    """Like iter_jsonl but surfaces broken lines as rejectable records."""
    for line in stream:
        line = line.strip()
        if not line:
            continue
        try:
            yield json.loads(line)
        except json.JSONDecodeError:
            yield {"__malformed__": line}


# --- serialization -----------------------------------------------------------

def publication_to_dict(pub: Publication) -> dict:
    """Stable wire/storage form of a publication; round-trips exactly."""
    out: dict = {"id": pub.id, "title": pub.title}
    if pub.abstract_text is not None:
        out["abstractText"] = pub.abstract_text
    if pub.year_published is not None:
        out["yearPublished"] = pub.year_published
    out["authorIds"] = list(pub.author_ids)
    out["authors"] = list(pub.author_names)
    if pub.venue_id is not None:
        out["venueId"] = pub.venue_id
    if pub.venue_name is not None:
        out["venue"] = pub.venue_name
    if pub.publisher is not None:
        out["publisher"] = pub.publisher
    out["typeOfPaper"] = pub.type_of_paper.value
    out["fieldsOfStudy"] = sorted(f.value for f in pub.fields_of_study)
    out["inCitations"] = list(pub.in_citation_ids)
    out["inCitationsCount"] = pub.in_citations_count
    out["outCitations"] = list(pub.out_citation_ids)
    out["outCitationsCount"] = pub.out_citations_count
    if pub.open_access is not None:
        out["openAccess"] = pub.open_access
    if pub.dblp_id is not None:
        out["dblpId"] = pub.dblp_id
    if pub.doi is not None:
        out["doi"] = pub.doi
    if pub.url is not None:
        out["url"] = pub.url
    return out


def publication_from_dict(data: Mapping[str, object]) -> Publication:
    return Publication(
        id=str(data["id"]),
        title=str(data["title"]),
        abstract_text=data.get("abstractText"),  # type: ignore[arg-type]
        year_published=data.get("yearPublished"),  # type: ignore[arg-type]
        author_ids=tuple(data.get("authorIds", ())),  # type: ignore[arg-type]
        author_names=tuple(data.get("authors", ())),  # type: ignore[arg-type]
        venue_id=data.get("venueId"),  # type: ignore[arg-type]
        venue_name=data.get("venue"),  # type: ignore[arg-type]
        publisher=data.get("publisher"),  # type: ignore[arg-type]
        type_of_paper=DocumentType(data.get("typeOfPaper", "article")),
        fields_of_study=frozenset(
            FieldOfStudy(name) for name in data.get("fieldsOfStudy", ())  # type: ignore[union-attr]
        ),
        in_citation_ids=tuple(data.get("inCitations", ())),  # type: ignore[arg-type]
        in_citations_count=int(data.get("inCitationsCount", 0)),  # type: ignore[arg-type]
        out_citation_ids=tuple(data.get("outCitations", ())),  # type: ignore[arg-type]
        out_citations_count=int(data.get("outCitationsCount", 0)),  # type: ignore[arg-type]
        open_access=data.get("openAccess"),  # type: ignore[arg-type]
        dblp_id=data.get("dblpId"),  # type: ignore[arg-type]
        doi=data.get("doi"),  # type: ignore[arg-type]
        url=data.get("url"),  # type: ignore[arg-type]
    )


def author_to_dict(author: Author) -> dict:
    out: dict = {"id": author.id, "fullname": author.full_name}
    if author.number is not None:
        out["number"] = author.number
    if author.orcid is not None:
        out["orcid"] = author.orcid
    return out


def author_from_dict(data: Mapping[str, object]) -> Author:
    return Author(
        id=str(data["id"]),
        full_name=str(data["fullname"]),
        number=data.get("number"),  # type: ignore[arg-type]
        orcid=data.get("orcid"),  # type: ignore[arg-type]
    )


def venue_to_dict(venue: Venue) -> dict:
    return {"id": venue.id, "names": list(venue.names)}


def venue_from_dict(data: Mapping[str, object]) -> Venue:
    return Venue(id=str(data["id"]), names=tuple(data["names"]))  # type: ignore[arg-type]
