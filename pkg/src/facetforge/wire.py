"""JSON payload builders shared by the HTTP API and the CLI.

Both surfaces must emit byte-identical documents for the same state, so
every payload is built here and serialized with the same dump function.
"""

from __future__ import annotations

import json

from .classification import Assignment, assignment_to_json
from .corpus import Document, IngestReport, document_to_json
from .engine import Engine
from .facets import Facet
from .federation import CoverageReport, DerivedReport
from .query import Explanation, SearchResult
from .registry import LocalizedClass
from .snapshot import SNAPSHOT_FORMAT


def dump_json(payload: object) -> str:
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"), allow_nan=False)


def localized_to_json(view: LocalizedClass) -> dict:
    return {
        "id": view.id,
        "label": view.label,
        "definition": view.definition,
        "status": view.status,
        "fallback": view.fallback,
    }


def search_result_to_json(result: SearchResult) -> dict:
    return {
        "hits": [
            {
                "doc": hit.doc_id,
                "score": hit.score,
                "facet_scores": {f.value: s for f, s in hit.facet_scores.items()},
            }
            for hit in result.hits
        ],
        "total": result.total,
    }


def explanation_to_json(explanation: Explanation) -> dict:
    return {
        "doc": explanation.doc_id,
        "score": explanation.score,
        "facet_scores": {f.value: s for f, s in explanation.facet_scores.items()},
        "matches": {
            f.value: {
                "query_class": m.query_class,
                "weight": m.weight,
                "path": list(m.path),
                "matched_class": m.matched_class,
                "matched_degree": m.matched_degree,
                "similarity": m.similarity,
                "contribution": m.contribution,
            }
            for f, m in explanation.matches.items()
        },
    }


def neighborhood_to_json(
    engine: Engine,
    class_id: str,
    facet: Facet | None = None,
    limit: int | None = None,
    lang: str = "en",
) -> dict:
    views = engine.pictures.merged_neighborhood(class_id, facet=facet, limit=limit)
    neighbors = []
    for view in views:
        localized = engine.registry.get_class(view.class_id, lang)
        neighbors.append(
            {
                "class": view.class_id,
                "weight": view.weight,
                "relation": view.relation,
                "provenance": list(view.provenance),
                "label": localized.label,
                "definition": localized.definition,
                "fallback": localized.fallback,
            }
        )
    return {
        "class": localized_to_json(engine.registry.get_class(class_id, lang)),
        "neighbors": neighbors,
    }


def document_payload(doc: Document) -> dict:
    return document_to_json(doc)


def ingest_report_to_json(report: IngestReport) -> dict:
    return {
        "accepted": report.accepted,
        "errors": [
            {"ordinal": e.ordinal, "code": e.code, "message": e.message}
            for e in report.errors
        ],
    }


def derived_report_to_json(report: DerivedReport) -> dict:
    return {
        "doc": report.doc_id,
        "assignments": [assignment_to_json(a) for a in report.assignments],
        "unmapped": [[scheme, code] for scheme, code in report.unmapped],
    }


def coverage_to_json(report: CoverageReport) -> dict:
    return {
        "scheme": report.scheme,
        "codes_seen": report.codes_seen,
        "mapped": report.mapped,
        "unmapped": list(report.unmapped),
    }


def assignment_payload(assignment: Assignment) -> dict:
    return assignment_to_json(assignment)


def health_payload() -> dict:
    return {"status": "ok", "snapshot": SNAPSHOT_FORMAT}
