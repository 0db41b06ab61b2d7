"""Asynchronous topic-model jobs: a manager accepts work and dispatches
training to a small worker pool.

One job trains on the publications matching its filter set (titles plus
abstracts) and produces the full visualization payload: top salient terms,
per-topic relevance rankings over a lambda grid, and 2D topic coordinates.
Jobs are independent; identical (filters, k, seed) submissions produce
identical results. Terminal states never change after being reached.
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from ..filters import FilterSet, compile_predicate
from .model import EmptyVocabulary, TooFewDocuments, TopicModel, train
from .ranking import intertopic_coordinates, relevance, top_salient_terms

LAMBDA_GRID = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
TOP_TERMS = 30

QUEUED = "queued"
TRAINING = "training"
DONE = "done"
FAILED = "failed"
_TERMINAL = (DONE, FAILED)


class UnknownJob(KeyError):
    """No job with that id was ever submitted."""


@dataclass
class TopicJob:
    job_id: str
    filter_set: FilterSet
    k: int
    seed: int
    status: str = QUEUED
    result: dict | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        out = {
            "job_id": self.job_id,
            "k": self.k,
            "seed": self.seed,
            "status": self.status,
        }
        if self.result is not None:
            out["result"] = self.result
        if self.error is not None:
            out["error"] = self.error
        return out


def document_text(pub) -> str:
    if pub.abstract_text:
        return f"{pub.title} {pub.abstract_text}"
    return pub.title


def build_payload(model: TopicModel) -> dict:
    """The HTML-embeddable JSON the topic dashboard renders from."""
    topics = []
    for t in range(model.k):
        topics.append(
            {
                "topic": t,
                "prevalence": float(model.topic_prevalence[t]),
                "relevance": {
                    f"{lam:.1f}": [
                        ts.to_dict() for ts in relevance(model, t, lam)[:TOP_TERMS]
                    ]
                    for lam in LAMBDA_GRID
                },
            }
        )
    return {
        "k": model.k,
        "seed": model.seed,
        "vocabulary_size": len(model.vocab),
        "top_salient_terms": [
            ts.to_dict() for ts in top_salient_terms(model, TOP_TERMS)
        ],
        "topics": topics,
        "coordinates": intertopic_coordinates(model) if model.k >= 2 else [],
    }


def run_training(documents: Sequence[str], k: int, seed: int) -> dict:
    model = train(documents, k=k, seed=seed)
    return build_payload(model)


class JobManager:
    """Accepts jobs, runs them on a worker pool, stores results for polling."""

    def __init__(self, store, workers: int = 2):
        self._store = store
        self._jobs: dict[str, TopicJob] = {}
        self._lock = threading.Lock()
        self._pool = ThreadPoolExecutor(
            max_workers=max(1, workers), thread_name_prefix="topic-worker"
        )

    def submit_job(self, filter_set: FilterSet, k: int = 10, seed: int = 0) -> str:
        job = TopicJob(job_id=uuid.uuid4().hex, filter_set=filter_set, k=k, seed=seed)
        with self._lock:
            self._jobs[job.job_id] = job
        self._pool.submit(self._run, job.job_id)
        return job.job_id

    def poll_job(self, job_id: str) -> dict:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:
                raise UnknownJob(job_id)
            return job.to_dict()

    def run_sync(self, filter_set: FilterSet, k: int = 10, seed: int = 0) -> dict:
        """Train in the calling thread (the one-shot CLI path)."""
        documents = self._documents(filter_set)
        return run_training(documents, k, seed)

    def shutdown(self) -> None:
        self._pool.shutdown(wait=True)

    def _documents(self, filter_set: FilterSet) -> list[str]:
        predicate = compile_predicate(filter_set)
        return [document_text(pub) for pub in self._store.scan(predicate)]

    def _run(self, job_id: str) -> None:
        self._transition(job_id, TRAINING)
        job = self._jobs[job_id]
        try:
            documents = self._documents(job.filter_set)
            result = run_training(documents, job.k, job.seed)
        except (TooFewDocuments, EmptyVocabulary, ValueError) as exc:
            self._finish(job_id, FAILED, error=f"{type(exc).__name__}: {exc}")
            return
        self._finish(job_id, DONE, result=result)

    def _transition(self, job_id: str, status: str) -> None:
        with self._lock:
            job = self._jobs[job_id]
            if job.status not in _TERMINAL:
                job.status = status

    def _finish(
        self, job_id: str, status: str, result: dict | None = None, error: str | None = None
    ) -> None:
        with self._lock:
            job = self._jobs[job_id]
            if job.status in _TERMINAL:
                return
            job.status = status
            job.result = result
            job.error = error
