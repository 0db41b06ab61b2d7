"""LDA training over preprocessed title+abstract documents.

Training is delegated to scikit-learn's variational LDA with symmetric
priors alpha = 1/k and beta = 0.01; the fitted posterior is re-expressed as
plain row-normalized matrices so everything downstream (saliency,
relevance, coordinates) works from first principles. Fixed
(documents, k, seed) always reproduces identical matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse
from sklearn.decomposition import LatentDirichletAllocation

from .preprocess import preprocess


class TooFewDocuments(ValueError):
    """Fewer non-empty documents than topics requested."""


class EmptyVocabulary(ValueError):
    """Preprocessing left no terms at all."""


@dataclass(frozen=True)
class TopicModel:
    k: int
    vocab: tuple[str, ...]
    phi: np.ndarray  # k x |vocab|, rows sum to 1: p(word | topic)
    theta: np.ndarray  # D x k, rows sum to 1: p(topic | document)
    term_frequency: np.ndarray  # corpus counts per vocab term
    topic_prevalence: np.ndarray  # p(topic), token-mass share, sums to 1
    seed: int
    document_indices: tuple[int, ...] = ()  # rows of theta -> input positions

    @property
    def total_tokens(self) -> int:
        return int(self.term_frequency.sum())

    def term_probability(self) -> np.ndarray:
        """Empirical corpus probability of each term."""
        return self.term_frequency / self.term_frequency.sum()

    def topic_given_term(self) -> np.ndarray:
        """p(topic | term) by Bayes from phi and the topic prevalence,
        normalized over topics; k x |vocab|."""
        joint = self.phi * self.topic_prevalence[:, np.newaxis]
        column_mass = joint.sum(axis=0)
        column_mass[column_mass == 0.0] = 1.0
        return joint / column_mass


def build_count_matrix(
    token_lists: Sequence[Sequence[str]],
) -> tuple[sparse.csr_matrix, tuple[str, ...]]:
    vocab = tuple(sorted({token for tokens in token_lists for token in tokens}))
    if not vocab:
        raise EmptyVocabulary("no terms survived preprocessing")
    column = {term: i for i, term in enumerate(vocab)}
    rows, cols, data = [], [], []
    for row, tokens in enumerate(token_lists):
        counts: dict[str, int] = {}
        for token in tokens:
            counts[token] = counts.get(token, 0) + 1
        for term, count in counts.items():
            rows.append(row)
            cols.append(column[term])
            data.append(count)
    matrix = sparse.csr_matrix(
        (data, (rows, cols)), shape=(len(token_lists), len(vocab)), dtype=np.float64
    )
    return matrix, vocab


def train(documents: Sequence[str], k: int = 10, seed: int = 0) -> TopicModel:
    """Fit a k-topic model over raw document texts.

    Documents that preprocess to nothing are skipped (their positions are
    recorded in document_indices); at least k must survive.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    token_lists = []
    kept_indices = []
    for index, text in enumerate(documents):
        tokens = preprocess(text)
        if tokens:
            token_lists.append(tokens)
            kept_indices.append(index)
    if len(token_lists) < k:
        raise TooFewDocuments(
            f"{len(token_lists)} non-empty documents < k={k}"
        )
    counts, vocab = build_count_matrix(token_lists)

    lda = LatentDirichletAllocation(
        n_components=k,
        doc_topic_prior=1.0 / k,
        topic_word_prior=0.01,
        learning_method="batch",
        max_iter=60,
        random_state=seed,
    )
    lda.fit(counts)
    theta = lda.transform(counts)
    theta = theta / theta.sum(axis=1, keepdims=True)
    phi = lda.components_ / lda.components_.sum(axis=1, keepdims=True)

    term_frequency = np.asarray(counts.sum(axis=0)).ravel()
    tokens_per_doc = np.asarray(counts.sum(axis=1)).ravel()
    prevalence = theta.T @ tokens_per_doc
    prevalence = prevalence / prevalence.sum()

    return TopicModel(
        k=k,
        vocab=vocab,
        phi=phi,
        theta=theta,
        term_frequency=term_frequency,
        topic_prevalence=prevalence,
        seed=seed,
        document_indices=tuple(kept_indices),
    )
