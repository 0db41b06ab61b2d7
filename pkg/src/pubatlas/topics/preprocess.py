"""Text preprocessing for topic modeling.

The chain: strip HTML tags, lowercase, drop digits, tokenize on ASCII
letter runs, drop stopwords and tokens shorter than three characters, stem,
then re-apply the stopword/length filters to the stems. Token order is
preserved. The output space is closed under the pipeline, so
preprocess(" ".join(preprocess(x))) == preprocess(x) for every input.
"""

from __future__ import annotations

import re

from .stemming import stem_to_fixpoint
from .stopwords import STOPWORDS

_TAGS = re.compile(r"<[^>]*>")
_DIGITS = re.compile(r"[0-9]+")
_TOKEN = re.compile(r"[a-z]+")

MIN_TOKEN_LENGTH = 3


def tokenize(text: str) -> list[str]:
    text = _TAGS.sub(" ", text).casefold()
    text = _DIGITS.sub("", text)
    return _TOKEN.findall(text)


def preprocess(text: str) -> list[str]:
    tokens = []
    for token in tokenize(text):
        if len(token) < MIN_TOKEN_LENGTH or token in STOPWORDS:
            continue
        stem = stem_to_fixpoint(token)
        if len(stem) < MIN_TOKEN_LENGTH or stem in STOPWORDS:
            continue
        tokens.append(stem)
    return tokens
