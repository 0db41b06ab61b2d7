#!/usr/bin/env python3
"""Generate a synthetic demo corpus: publications JSONL plus a reference
sidecar for the citation linker.

Usage:
    python scripts/make_synthetic_corpus.py --out demo/ [--size 2000] [--seed 7]

Produces demo/corpus.jsonl and demo/references.jsonl. Titles and abstracts
carry topical vocabulary so the LDA dashboard has something to find.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import random

VENUES = [
    "CVPR", "ICCV", "ACL", "EMNLP", "NeurIPS", "SIGIR", "CHI", "ICSE",
    "Commun. ACM", "IEEE Trans. Inf. Theory", "CVPR Workshops", "TOOLS (48)",
]
PUBLISHERS = ["ACM", "IEEE", "Springer", "Elsevier", None, None, None]
FIELDS = ["Computer Science", "Mathematics", "Engineering", "Medicine", "Physics"]
TYPES = ["inproceedings"] * 5 + ["article"] * 4 + ["book", "incollection", "phdthesis"]
FIRST = ["Ada", "Alan", "Grace", "Edsger", "Barbara", "Donald", "Frances",
         "John", "Shafi", "Terry", "Jan", "Luc"]
LAST = ["Lovelace", "Turing", "Hopper", "Dijkstra", "Liskov", "Knuth", "Allen",
        "McCarthy", "Goldwasser", "Noether", "Franklin", "Hamilton"]

TOPIC_WORDS = {
    "vision": ["image", "segmentation", "detection", "tracking", "camera", "pixel"],
    "language": ["parsing", "translation", "corpus", "embedding", "sentence", "token"],
    "systems": ["cache", "scheduler", "latency", "throughput", "kernel", "cluster"],
    "theory": ["bound", "complexity", "graph", "approximation", "proof", "lattice"],
}


def make_author_pool(rng: random.Random, count: int) -> list[tuple[str, str]]:
    pool = []
    for i in range(count):
        name = f"{rng.choice(FIRST)} {rng.choice(LAST)}"
        pool.append((f"a{i:05d}", name))
    return pool


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, type=pathlib.Path)
    parser.add_argument("--size", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    authors = make_author_pool(rng, max(50, args.size // 12))

    titles = {}
    with open(args.out / "corpus.jsonl", "w", encoding="utf-8") as handle:
        for i in range(args.size):
            topic = rng.choice(sorted(TOPIC_WORDS))
            words = TOPIC_WORDS[topic]
            title = f"{rng.choice(words).title()} {rng.choice(words)} via {rng.choice(words)} {i}"
            titles[f"p{i:06d}"] = title
            team = rng.sample(authors, rng.randint(1, 4))
            record = {
                "id": f"p{i:06d}",
                "title": title,
                "abstractText": " ".join(rng.choice(words) for _ in range(40)),
                "yearPublished": rng.choice([None] + list(range(1980, 2023))),
                "authors": [name for _, name in team],
                "authorIds": [author_id for author_id, _ in team],
                "typeOfPaper": rng.choice(TYPES),
                "fieldsOfStudy": sorted(rng.sample(FIELDS, rng.randint(0, 2))),
                "publisher": rng.choice(PUBLISHERS),
                "openAccess": rng.choice([None, True, False]),
            }
            venue = rng.choice(VENUES)
            if record["typeOfPaper"] == "article":
                record["journal"] = venue
            else:
                record["booktitle"] = venue
            record = {k: v for k, v in record.items() if v is not None}
            handle.write(json.dumps(record) + "\n")

    ids = sorted(titles)
    with open(args.out / "references.jsonl", "w", encoding="utf-8") as handle:
        for pub_id in ids:
            cited = rng.sample(ids, rng.randint(0, 6))
            refs = [titles[c] for c in cited if c != pub_id]
            handle.write(json.dumps({"id": pub_id, "references": refs}) + "\n")

    print(f"wrote {args.size} records to {args.out}/corpus.jsonl")
    print(f"wrote reference lists to {args.out}/references.jsonl")


if __name__ == "__main__":
    main()
