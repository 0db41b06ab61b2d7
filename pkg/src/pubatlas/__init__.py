"""Scholarly publication metadata analytics.

Ingest line-delimited publication metadata, link citations internally by
fuzzy title matching, and serve faceted aggregations and topic models over
an authenticated HTTP API, a CLI, and a browser dashboard.
"""

from .model import (
    Author,
    DocumentType,
    FieldOfStudy,
    Publication,
    Venue,
    validate,
)
from .store import Store

__version__ = "0.1.0"

__all__ = [
    "Author",
    "DocumentType",
    "FieldOfStudy",
    "Publication",
    "Store",
    "Venue",
    "validate",
    "__version__",
]
