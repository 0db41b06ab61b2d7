"""Read-optimized persistence for publications, authors and venues.

Collections live in memory keyed by id, with secondary indexes mirroring the
query surface (year, document type, fields of study, venue name, author
names). The workload is read-heavy with rare batch writes, so every write
invalidates the whole aggregation-result cache instead of tracking
dependencies.

Concurrency contract: many readers, one writer. Writers take the store lock
for the duration of a batch; readers snapshot id lists under the lock and
then work on immutable records.

When constructed with a data directory the collections survive restarts as
JSONL files, rewritten atomically on flush.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import time
from contextlib import contextmanager
from typing import Callable, Iterator

from . import ingest as serialization
from .model import Author, Publication, Venue


class StorageError(Exception):
    """The backing files could not be read or written."""


class Store:
    def __init__(self, data_dir: str | None = None):
        self._lock = threading.RLock()
        self._publications: dict[str, Publication] = {}
        self._authors: dict[str, Author] = {}
        self._venues: dict[str, Venue] = {}
        self._cache: dict[str, tuple[bytes, float]] = {}
        self._index_year: dict[int | None, set[str]] = {}
        self._index_type: dict[str, set[str]] = {}
        self._index_field: dict[str, set[str]] = {}
        self._index_venue: dict[str, set[str]] = {}
        self._index_author: dict[str, set[str]] = {}
        self._data_dir = data_dir
        self._dirty = False
        if data_dir is not None:
            self._load()

    # -- write path -----------------------------------------------------------

    @contextmanager
    def write_batch(self):
        """Exclusive access for a batch of writes; flushes on exit."""
        with self._lock:
            yield self
            if self._dirty:
                self.flush()

    def upsert_publication(self, pub: Publication) -> bool:
        """Insert or replace by id. Returns True when an id was overwritten."""
        with self._lock:
            existed = pub.id in self._publications
            if existed:
                self._unindex(self._publications[pub.id])
            self._publications[pub.id] = pub
            self._index(pub)
            self._invalidate_cache()
            self._dirty = True
            return existed

    def upsert_author(self, author: Author) -> bool:
        with self._lock:
            existed = author.id in self._authors
            self._authors[author.id] = author
            self._invalidate_cache()
            self._dirty = True
            return existed

    def upsert_venue(self, venue: Venue) -> bool:
        with self._lock:
            existed = venue.id in self._venues
            self._venues[venue.id] = venue
            self._invalidate_cache()
            self._dirty = True
            return existed

    def delete_publication(self, pub_id: str) -> bool:
        with self._lock:
            pub = self._publications.pop(pub_id, None)
            if pub is None:
                return False
            self._unindex(pub)
            self._invalidate_cache()
            self._dirty = True
            return True

    def delete_author(self, author_id: str) -> bool:
        with self._lock:
            existed = self._authors.pop(author_id, None) is not None
            if existed:
                self._invalidate_cache()
                self._dirty = True
            return existed

    def delete_venue(self, venue_id: str) -> bool:
        with self._lock:
            existed = self._venues.pop(venue_id, None) is not None
            if existed:
                self._invalidate_cache()
                self._dirty = True
            return existed

    # -- read path ------------------------------------------------------------

    def get_publication(self, pub_id: str) -> Publication | None:
        return self._publications.get(pub_id)

    def get_author(self, author_id: str) -> Author | None:
        return self._authors.get(author_id)

    def get_venue(self, venue_id: str) -> Venue | None:
        return self._venues.get(venue_id)

    def scan(
        self, predicate: Callable[[Publication], bool] | None = None
    ) -> Iterator[Publication]:
        """Yield matching publications once each, in ascending id order."""
        with self._lock:
            ids = sorted(self._publications)
        for pub_id in ids:
            pub = self._publications.get(pub_id)
            if pub is not None and (predicate is None or predicate(pub)):
                yield pub

    def all_publications(self) -> list[Publication]:
        return list(self.scan())

    def count_publications(self) -> int:
        return len(self._publications)

    def count_authors(self) -> int:
        return len(self._authors)

    def count_venues(self) -> int:
        return len(self._venues)

    # -- aggregation cache ------------------------------------------------------

    def cache_get(self, key: str) -> bytes | None:
        with self._lock:
            entry = self._cache.get(key)
            return entry[0] if entry else None

    def cache_put(self, key: str, value: bytes) -> None:
        with self._lock:
            self._cache[key] = (value, time.time())

    def _invalidate_cache(self) -> None:
        self._cache.clear()

    # -- secondary indexes ------------------------------------------------------

    def _index(self, pub: Publication) -> None:
        self._index_year.setdefault(pub.year_published, set()).add(pub.id)
        self._index_type.setdefault(pub.type_of_paper.value, set()).add(pub.id)
        for fos in pub.fields_of_study:
            self._index_field.setdefault(fos.value, set()).add(pub.id)
        if pub.venue_name is not None:
            self._index_venue.setdefault(pub.venue_name, set()).add(pub.id)
        for name in pub.author_names:
            self._index_author.setdefault(name, set()).add(pub.id)

    def _unindex(self, pub: Publication) -> None:
        self._discard(self._index_year, pub.year_published, pub.id)
        self._discard(self._index_type, pub.type_of_paper.value, pub.id)
        for fos in pub.fields_of_study:
            self._discard(self._index_field, fos.value, pub.id)
        if pub.venue_name is not None:
            self._discard(self._index_venue, pub.venue_name, pub.id)
        for name in pub.author_names:
            self._discard(self._index_author, name, pub.id)

    @staticmethod
    def _discard(index: dict, key, pub_id: str) -> None:
        bucket = index.get(key)
        if bucket is not None:
            bucket.discard(pub_id)
            if not bucket:
                del index[key]

    def index_values(self, field: str) -> dict[str, int]:
        """Distinct indexed values of a field with their record counts."""
        index = {
            "venue_name": self._index_venue,
            "author_names": self._index_author,
            "type_of_paper": self._index_type,
            "fields_of_study": self._index_field,
        }[field]
        with self._lock:
            return {value: len(ids) for value, ids in index.items()}

    def ids_for_year(self, year: int | None) -> set[str]:
        return set(self._index_year.get(year, ()))

    # -- persistence ------------------------------------------------------------

    def flush(self) -> None:
        if self._data_dir is None:
            self._dirty = False
            return
        try:
            os.makedirs(self._data_dir, exist_ok=True)
            self._write_jsonl(
                "publications.jsonl",
                (
                    serialization.publication_to_dict(p)
                    for p in self._publications.values()
                ),
            )
            self._write_jsonl(
                "authors.jsonl",
                (serialization.author_to_dict(a) for a in self._authors.values()),
            )
            self._write_jsonl(
                "venues.jsonl",
                (serialization.venue_to_dict(v) for v in self._venues.values()),
            )
        except OSError as exc:
            raise StorageError(str(exc)) from exc
        self._dirty = False

    def _write_jsonl(self, name: str, rows) -> None:
        assert self._data_dir is not None
        final_path = os.path.join(self._data_dir, name)
        fd, tmp_path = tempfile.mkstemp(dir=self._data_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                for row in rows:
                    handle.write(json.dumps(row, ensure_ascii=False))
                    handle.write("\n")
            os.replace(tmp_path, final_path)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise

    def _load(self) -> None:
        assert self._data_dir is not None
        try:
            for row in self._read_jsonl("authors.jsonl"):
                author = serialization.author_from_dict(row)
                self._authors[author.id] = author
            for row in self._read_jsonl("venues.jsonl"):
                venue = serialization.venue_from_dict(row)
                self._venues[venue.id] = venue
            for row in self._read_jsonl("publications.jsonl"):
                pub = serialization.publication_from_dict(row)
                self._publications[pub.id] = pub
                self._index(pub)
        except (OSError, ValueError, KeyError) as exc:
            raise StorageError(f"corrupt data dir {self._data_dir}: {exc}") from exc

    def _read_jsonl(self, name: str) -> Iterator[dict]:
        assert self._data_dir is not None
        path = os.path.join(self._data_dir, name)
        if not os.path.exists(path):
            return
        with open(path, "r", encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if line:
                    yield json.loads(line)
