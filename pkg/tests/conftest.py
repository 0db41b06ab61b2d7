"""Shared fixtures: publication factories and random-corpus generators.

The generators are deliberately small-vocabulary so that random filters hit
records often enough to exercise every branch.
"""

from __future__ import annotations

import random

import pytest

from pubatlas.model import DocumentType, FieldOfStudy, Publication

AUTHOR_POOL = (
    "Ada Lovelace",
    "Alan Turing",
    "Grace Hopper",
    "Edsger Dijkstra",
    "Barbara Liskov",
    "Donald Knuth",
    "Frances Allen",
    "John McCarthy",
    "Shafi Goldwasser",
    "Tim Berners-Lee",
    "Yann LeCun",
    "Wei Chen 0001",
)

VENUE_POOL = (
    "CVPR",
    "ACL",
    "NeurIPS",
    "ICSE",
    "SIGIR",
    "CHI",
    "CVPR Workshops",
    "Commun. ACM",
)

PUBLISHER_POOL = ("ACM", "IEEE", "Springer", "Elsevier")

FIELD_POOL = (
    FieldOfStudy.COMPUTER_SCIENCE,
    FieldOfStudy.MATHEMATICS,
    FieldOfStudy.ENGINEERING,
    FieldOfStudy.MEDICINE,
    FieldOfStudy.PSYCHOLOGY,
)

DOC_TYPES = tuple(DocumentType)


def make_publication(pub_id: str = "p1", **overrides) -> Publication:
    base = dict(
        id=pub_id,
        title=f"Title of {pub_id}",
        year_published=2020,
        author_ids=("a1",),
        author_names=("Ada Lovelace",),
        venue_id="v1",
        venue_name="CVPR",
        type_of_paper=DocumentType.INPROCEEDINGS,
        fields_of_study=frozenset({FieldOfStudy.COMPUTER_SCIENCE}),
        in_citations_count=3,
        out_citations_count=1,
        open_access=True,
    )
    base.update(overrides)
    return Publication(**base)


def random_publication(rng: random.Random, pub_id: str) -> Publication:
    n_authors = rng.randint(0, 3)
    authors = rng.sample(AUTHOR_POOL, n_authors)
    venue = rng.choice((None,) + VENUE_POOL)
    publisher = rng.choice((None,) + PUBLISHER_POOL)
    year = rng.choice((None, None) + tuple(range(2010, 2023)))
    n_fields = rng.randint(0, 2)
    fields = frozenset(rng.sample(FIELD_POOL, n_fields))
    open_access = rng.choice((None, True, False))
    citations = rng.choice((0, 0, 1, 2, 5, 9, 10, 42, 99, 100, 730, 999, 1000, 1500))
    return Publication(
        id=pub_id,
        title=f"Study {pub_id} of {rng.randrange(1000)}",
        year_published=year,
        author_ids=tuple(f"a-{name}" for name in authors),
        author_names=tuple(authors),
        venue_id=f"v-{venue}" if venue else None,
        venue_name=venue,
        publisher=publisher,
        type_of_paper=rng.choice(DOC_TYPES),
        fields_of_study=fields,
        in_citations_count=citations,
        out_citations_count=rng.randint(0, 60),
        open_access=open_access,
    )


def random_corpus(rng: random.Random, size: int) -> list[Publication]:
    return [random_publication(rng, f"p{i:05d}") for i in range(size)]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240811)


@pytest.fixture
def small_corpus(rng) -> list[Publication]:
    return random_corpus(rng, 60)
