from .jobs import JobManager, TopicJob, UnknownJob
from .model import EmptyVocabulary, TooFewDocuments, TopicModel, train
from .preprocess import preprocess, tokenize
from .ranking import (
    TermScore,
    intertopic_coordinates,
    relevance,
    saliency,
    top_salient_terms,
)
from .stemming import porter_stem, stem_to_fixpoint

__all__ = [
    "EmptyVocabulary",
    "JobManager",
    "TermScore",
    "TooFewDocuments",
    "TopicJob",
    "TopicModel",
    "UnknownJob",
    "intertopic_coordinates",
    "porter_stem",
    "preprocess",
    "relevance",
    "saliency",
    "stem_to_fixpoint",
    "tokenize",
    "top_salient_terms",
    "train",
]
