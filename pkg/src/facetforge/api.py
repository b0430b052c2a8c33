"""HTTP+JSON surface over one engine instance.

All endpoints live under /api/v1 and speak UTF-8 JSON. Engine errors map
to one machine code each; callers get {"error": {"code", "message",
"path"?}} with a 4xx status. Mutations are applied synchronously and
serialized by the engine's writer lock, so no request observes a
half-applied change.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .classification import assignment_from_json
from .engine import Engine
from .errors import FacetForgeError, MalformedQuery, MalformedRecord
from .facets import Facet
from .federation import mapping_from_json
from .pictures import picture_from_json
from .query import parse_query
from .registry import entry_from_json
from . import wire

#: HTTP status per machine code; anything unlisted is a 400 caller error.
ERROR_STATUS = {
    "unknown_class": 404,
    "unknown_doc": 404,
    "unknown_scheme": 404,
    "duplicate_id": 409,
    "duplicate_label": 409,
    "duplicate_mapping": 409,
    "duplicate_doc": 409,
    "not_matched": 409,
    "workspace": 500,
    "internal_error": 500,
}


def _json_response(payload: object, status_code: int = 200) -> Response:
    return Response(
        content=wire.dump_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error_response(exc: FacetForgeError) -> Response:
    body: dict = {"error": {"code": exc.code, "message": str(exc)}}
    if exc.path:
        body["error"]["path"] = exc.path
    return _json_response(body, ERROR_STATUS.get(exc.code, 400))


async def _read_json(request: Request) -> object:
    raw = await request.body()
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedRecord(f"request body is not valid JSON: {exc}") from None


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="facetforge", docs_url=None, redoc_url=None)
    # The browser console may be served from a different origin than the
    # engine; the service itself defaults to loopback.
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(FacetForgeError)
    async def engine_error(_request: Request, exc: FacetForgeError) -> Response:
        return _error_response(exc)

    @app.get("/api/v1/health")
    async def health() -> Response:
        return _json_response(wire.health_payload())

    @app.post("/api/v1/search")
    async def search(request: Request, top_k: int = 20) -> Response:
        query = parse_query(await _read_json(request))
        result = engine.search(query, top_k=top_k)
        return _json_response(wire.search_result_to_json(result))

    @app.post("/api/v1/explain")
    async def explain(request: Request) -> Response:
        body = await _read_json(request)
        if not isinstance(body, dict) or "doc_id" not in body or "query" not in body:
            raise MalformedQuery("body must contain doc_id and query")
        query = parse_query(body["query"])
        explanation = engine.explain(body["doc_id"], query)
        return _json_response(wire.explanation_to_json(explanation))

    @app.get("/api/v1/classes")
    async def list_classes(prefix: str | None = None, lang: str = "en") -> Response:
        views = engine.registry.list_classes(prefix=prefix, lang=lang)
        return _json_response({"classes": [wire.localized_to_json(v) for v in views]})

    @app.get("/api/v1/classes/{class_id}/neighborhood")
    async def neighborhood(
        class_id: str,
        facet: str | None = None,
        limit: int = 50,
        lang: str = "en",
    ) -> Response:
        facet_value = Facet.parse(facet) if facet else None
        payload = wire.neighborhood_to_json(
            engine, class_id, facet=facet_value, limit=limit, lang=lang
        )
        return _json_response(payload)

    @app.post("/api/v1/classes")
    async def add_class(request: Request) -> Response:
        entry = entry_from_json(await _read_json(request))
        class_id = engine.add_class(entry)
        return _json_response({"id": class_id}, status_code=201)

    @app.post("/api/v1/pictures")
    async def add_picture(request: Request) -> Response:
        picture = picture_from_json(await _read_json(request))
        picture_id = engine.upsert_picture(picture)
        return _json_response({"picture_id": picture_id}, status_code=201)

    @app.post("/api/v1/classifications")
    async def add_classification(request: Request) -> Response:
        kwargs = assignment_from_json(await _read_json(request))
        assignment = engine.assign(**kwargs)
        return _json_response(wire.assignment_payload(assignment), status_code=201)

    @app.post("/api/v1/federation/mappings")
    async def add_mapping(request: Request) -> Response:
        mapping = mapping_from_json(await _read_json(request))
        engine.add_mapping(mapping)
        return _json_response({"stored": True}, status_code=201)

    @app.get("/api/v1/federation/coverage/{scheme}")
    async def coverage(scheme: str) -> Response:
        return _json_response(wire.coverage_to_json(engine.federation.coverage_report(scheme)))

    @app.post("/api/v1/documents:batch")
    async def ingest(request: Request) -> Response:
        raw = await request.body()
        report = engine.ingest_lines(raw.decode("utf-8").splitlines())
        return _json_response(wire.ingest_report_to_json(report))

    @app.get("/api/v1/documents/{doc_id}")
    async def get_document(doc_id: str) -> Response:
        return _json_response(wire.document_payload(engine.corpus.get_document(doc_id)))

    @app.get("/api/v1/documents/{doc_id}/classifications")
    async def document_classifications(doc_id: str) -> Response:
        # Raw per-classifier submissions, not the aggregate: callers can
        # apply their own calibration on top.
        engine.corpus.require(doc_id)
        rows = engine.classifications.live_assignments(doc_id)
        return _json_response(
            {"assignments": [wire.assignment_payload(a) for a in rows]}
        )

    return app
