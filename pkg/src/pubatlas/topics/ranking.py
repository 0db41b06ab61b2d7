"""Term ranking and topic layout for the topic visualization.

saliency(w) = frequency(w) * sum_t p(t|w) * ln(p(t|w) / p(t))
relevance(w | t) = lambda * p(w|t) + (1 - lambda) * p(w|t) / p(w)

Natural logarithms throughout; the base only scales saliency, never the
ranking. p(w) is the empirical corpus term probability. Topic coordinates
come from pairwise Jensen-Shannon divergence between the topic-word rows,
classically scaled to two dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import TopicModel


@dataclass(frozen=True)
class TermScore:
    term: str
    score: float

    def to_dict(self) -> dict:
        return {"term": self.term, "score": self.score}


def saliency(model: TopicModel) -> list[TermScore]:
    """Saliency per vocab term, in vocab order; zero-frequency terms are
    excluded. The KL-style distinctiveness is non-negative, so scores are
    clamped at 0 against float round-off."""
    conditional = model.topic_given_term()  # p(t | w)
    prevalence = model.topic_prevalence[:, np.newaxis]  # p(t)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_ratio = np.where(
            conditional > 0.0, np.log(conditional / prevalence), 0.0
        )
    distinctiveness = (conditional * log_ratio).sum(axis=0)
    scores = model.term_frequency * np.maximum(distinctiveness, 0.0)
    return [
        TermScore(term, float(scores[i]))
        for i, term in enumerate(model.vocab)
        if model.term_frequency[i] > 0
    ]


def top_salient_terms(model: TopicModel, n: int = 30) -> list[TermScore]:
    """The n highest-saliency terms, ties broken lexicographically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    scored = saliency(model)
    scored.sort(key=lambda ts: (-ts.score, ts.term))
    return scored[:n]


def relevance(model: TopicModel, topic: int, lam: float) -> list[TermScore]:
    """Terms of one topic ranked by the lambda-blend of in-topic probability
    and lift, descending; ties lexicographic."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")
    if not 0 <= topic < model.k:
        raise ValueError(f"topic {topic} outside [0, {model.k})")
    topic_row = model.phi[topic]
    term_probability = model.term_probability()
    with np.errstate(divide="ignore", invalid="ignore"):
        lift = np.where(term_probability > 0.0, topic_row / term_probability, 0.0)
    scores = lam * topic_row + (1.0 - lam) * lift
    ranked = [
        TermScore(term, float(scores[i])) for i, term in enumerate(model.vocab)
    ]
    ranked.sort(key=lambda ts: (-ts.score, ts.term))
    return ranked


def jensen_shannon_matrix(phi: np.ndarray) -> np.ndarray:
    """Pairwise JSD between distribution rows: symmetric, zero diagonal,
    natural log."""
    k = phi.shape[0]
    distances = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            distances[i, j] = distances[j, i] = _jsd(phi[i], phi[j])
    return distances


def _jsd(p: np.ndarray, q: np.ndarray) -> float:
    mixture = 0.5 * (p + q)

    def kl(a: np.ndarray) -> float:
        mask = a > 0.0
        return float(np.sum(a[mask] * np.log(a[mask] / mixture[mask])))

    return max(0.0, 0.5 * kl(p) + 0.5 * kl(q))


def classical_mds(distances: np.ndarray) -> np.ndarray:
    """Classical (Torgerson) scaling of a dissimilarity matrix to 2D."""
    n = distances.shape[0]
    squared = distances**2
    centering = np.eye(n) - np.full((n, n), 1.0 / n)
    gram = -0.5 * centering @ squared @ centering
    eigenvalues, eigenvectors = np.linalg.eigh(gram)
    order = np.argsort(eigenvalues)[::-1][:2]
    coords = np.zeros((n, 2))
    for axis, index in enumerate(order):
        value = eigenvalues[index]
        if value > 0.0:
            coords[:, axis] = eigenvectors[:, index] * np.sqrt(value)
    return coords


def intertopic_coordinates(model: TopicModel) -> list[dict]:
    """2D layout of the topics plus their token-mass share as size."""
    if model.k < 2:
        raise ValueError("coordinates need at least two topics")
    coords = classical_mds(jensen_shannon_matrix(model.phi))
    return [
        {
            "topic": t,
            "x": float(coords[t, 0]),
            "y": float(coords[t, 1]),
            "size": float(model.topic_prevalence[t]),
        }
        for t in range(model.k)
    ]
