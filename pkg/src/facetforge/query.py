"""Query documents: per-facet weighted class selections plus a mode.

The JSON shape accepted by the API, the CLI and the snapshot test suite:

    {"mode": "prior_art" | "solution",
     "h": 3, "theta": 0.05,
     "facet_weights": {"application": 1.0, ...},
     "selections": {"application": [["stent", 1.0]], ...}}

Parsing tracks a field path so a caller can point at the exact offending
value (e.g. "selections.application[0][1]").
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import MalformedQuery
from .facets import Facet

DEFAULT_HOPS = 3
DEFAULT_THRESHOLD = 0.05


class QueryMode(str, Enum):
    PRIOR_ART = "prior_art"
    SOLUTION = "solution"


@dataclass(frozen=True)
class QuerySelection:
    class_id: str
    weight: float


@dataclass
class Query:
    selections: dict[Facet, tuple[QuerySelection, ...]]
    mode: QueryMode
    hops: int = DEFAULT_HOPS
    threshold: float = DEFAULT_THRESHOLD
    facet_weights: dict[Facet, float] = field(default_factory=dict)

    def weight_of(self, facet: Facet) -> float:
        return self.facet_weights.get(facet, 1.0)


@dataclass(frozen=True)
class ScoredHit:
    doc_id: str
    score: float
    facet_scores: dict[Facet, float]


@dataclass(frozen=True)
class SearchResult:
    hits: tuple[ScoredHit, ...]
    total: int


@dataclass(frozen=True)
class FacetMatch:
    """The winning term of one facet's score: which query class reached
    which document class, along which path, at what contribution."""

    facet: Facet
    query_class: str
    weight: float
    path: tuple[str, ...]
    matched_class: str
    matched_degree: float
    similarity: float
    contribution: float


@dataclass(frozen=True)
class Explanation:
    doc_id: str
    score: float
    facet_scores: dict[Facet, float]
    matches: dict[Facet, FacetMatch]


def _bad(path: str, message: str) -> MalformedQuery:
    return MalformedQuery(message, path=path)


def parse_query(obj: object) -> Query:
    if not isinstance(obj, dict):
        raise _bad("", "query must be an object")

    mode_raw = obj.get("mode")
    try:
        mode = QueryMode(mode_raw)
    except ValueError:
        raise _bad("mode", f"mode must be 'prior_art' or 'solution', got {mode_raw!r}") from None

    hops = obj.get("h", DEFAULT_HOPS)
    if not isinstance(hops, int) or isinstance(hops, bool) or hops < 0:
        raise _bad("h", f"h must be a non-negative integer, got {hops!r}")

    theta = obj.get("theta", DEFAULT_THRESHOLD)
    if not isinstance(theta, (int, float)) or isinstance(theta, bool) or not 0.0 < theta <= 1.0:
        raise _bad("theta", f"theta must be in (0,1], got {theta!r}")

    weights_raw = obj.get("facet_weights", {})
    if not isinstance(weights_raw, dict):
        raise _bad("facet_weights", "facet_weights must be an object")
    facet_weights: dict[Facet, float] = {}
    for name, value in weights_raw.items():
        try:
            facet = Facet(name)
        except ValueError:
            raise _bad(f"facet_weights.{name}", f"unknown facet {name!r}") from None
        if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
            raise _bad(f"facet_weights.{name}", f"facet weight must be positive, got {value!r}")
        facet_weights[facet] = float(value)

    selections_raw = obj.get("selections")
    if not isinstance(selections_raw, dict):
        raise _bad("selections", "selections must be an object keyed by facet")
    selections: dict[Facet, tuple[QuerySelection, ...]] = {}
    for name, rows in selections_raw.items():
        base = f"selections.{name}"
        try:
            facet = Facet(name)
        except ValueError:
            raise _bad(base, f"unknown facet {name!r}") from None
        if not isinstance(rows, list):
            raise _bad(base, "facet selections must be a list of [class, weight] pairs")
        parsed: list[QuerySelection] = []
        seen: set[str] = set()
        for i, row in enumerate(rows):
            if not isinstance(row, (list, tuple)) or len(row) != 2:
                raise _bad(f"{base}[{i}]", "selection must be a [class, weight] pair")
            class_id, weight = row
            if not isinstance(class_id, str) or not class_id:
                raise _bad(f"{base}[{i}][0]", "class must be a non-empty string")
            if class_id in seen:
                raise _bad(f"{base}[{i}][0]", f"class {class_id!r} selected twice in {name}")
            if (
                not isinstance(weight, (int, float))
                or isinstance(weight, bool)
                or not 0.0 < weight <= 1.0
            ):
                raise _bad(f"{base}[{i}][1]", f"weight must be in (0,1], got {weight!r}")
            seen.add(class_id)
            parsed.append(QuerySelection(class_id, float(weight)))
        if parsed:
            selections[facet] = tuple(parsed)

    return Query(
        selections=selections,
        mode=mode,
        hops=hops,
        threshold=float(theta),
        facet_weights=facet_weights,
    )


def query_to_json(query: Query) -> dict:
    return {
        "mode": query.mode.value,
        "h": query.hops,
        "theta": query.threshold,
        "facet_weights": {f.value: w for f, w in sorted(query.facet_weights.items())},
        "selections": {
            f.value: [[s.class_id, s.weight] for s in sels]
            for f, sels in sorted(query.selections.items())
        },
    }
