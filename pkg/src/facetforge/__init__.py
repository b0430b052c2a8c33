"""facetforge: fuzzy faceted classification and concept search."""

from .backend import BACKEND
from .classification import Assignment, AssignmentStore
from .corpus import CorpusStore, Document
from .engine import Engine
from .errors import FacetForgeError
from .facets import FACET_ORDER, Facet
from .federation import FederationStore, Mapping
from .pictures import GraphConfig, Picture, PictureStore, SimilarityGraph
from .query import (
    Explanation,
    Query,
    QueryMode,
    QuerySelection,
    ScoredHit,
    SearchResult,
    parse_query,
)
from .registry import ClassEntry, LocalizedClass, Registry
from .snapshot import load_snapshot, save_snapshot

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "AssignmentStore",
    "BACKEND",
    "ClassEntry",
    "CorpusStore",
    "Document",
    "Engine",
    "Explanation",
    "FACET_ORDER",
    "Facet",
    "FacetForgeError",
    "FederationStore",
    "GraphConfig",
    "LocalizedClass",
    "Mapping",
    "Picture",
    "PictureStore",
    "Query",
    "QueryMode",
    "QuerySelection",
    "Registry",
    "ScoredHit",
    "SearchResult",
    "SimilarityGraph",
    "load_snapshot",
    "parse_query",
    "save_snapshot",
    "__version__",
]
