"""Document ingestion and storage.

Titles and abstracts are stored verbatim for display but never scored:
retrieval runs entirely on classifications, not keywords.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .errors import DuplicateDoc, MalformedRecord, UnknownDoc, ValidationError

SOURCES = ("patent", "npl")


@dataclass(frozen=True)
class Document:
    doc_id: str
    title: str
    abstract: str = ""
    source: str = "patent"
    external_codes: tuple[tuple[str, str], ...] = ()
    language: str = "en"


@dataclass(frozen=True)
class IngestError:
    ordinal: int
    code: str
    message: str


@dataclass(frozen=True)
class IngestReport:
    accepted: int
    errors: tuple[IngestError, ...]


def document_to_json(doc: Document) -> dict:
    return {
        "doc_id": doc.doc_id,
        "title": doc.title,
        "abstract": doc.abstract,
        "source": doc.source,
        "external_codes": [[s, c] for s, c in doc.external_codes],
        "language": doc.language,
    }


def document_from_json(obj: object) -> Document:
    if not isinstance(obj, dict):
        raise MalformedRecord("document must be an object")
    try:
        codes = tuple((str(s), str(c)) for s, c in obj.get("external_codes", []))
        return Document(
            doc_id=obj["doc_id"],
            title=obj["title"],
            abstract=obj.get("abstract", ""),
            source=obj.get("source", "patent"),
            external_codes=codes,
            language=obj.get("language", "en"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRecord(f"bad document: {exc}") from None


def validate_document(doc: Document) -> None:
    if not isinstance(doc.doc_id, str) or not 1 <= len(doc.doc_id) <= 128:
        raise ValidationError("doc_id must be 1-128 characters")
    if not isinstance(doc.title, str) or not doc.title.strip():
        raise ValidationError("title must be non-empty")
    if doc.source not in SOURCES:
        raise ValidationError(f"source must be one of {SOURCES}, got {doc.source!r}")
    for scheme, code in doc.external_codes:
        if not scheme or not code:
            raise ValidationError("external codes need a scheme and a code")


class CorpusStore:
    def __init__(self) -> None:
        self._docs: dict[str, Document] = {}
        self.generation = 0

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def __len__(self) -> int:
        return len(self._docs)

    def doc_ids(self) -> list[str]:
        return sorted(self._docs)

    def require(self, doc_id: str) -> None:
        if doc_id not in self._docs:
            raise UnknownDoc(f"unknown document {doc_id!r}")

    def get_document(self, doc_id: str) -> Document:
        self.require(doc_id)
        return self._docs[doc_id]

    def add(self, doc: Document) -> str:
        validate_document(doc)
        if doc.doc_id in self._docs:
            raise DuplicateDoc(f"document {doc.doc_id!r} already exists")
        self._docs[doc.doc_id] = doc
        self.generation += 1
        return doc.doc_id

    def ingest(self, records: Iterable[object]) -> tuple[IngestReport, list[str]]:
        """Store the valid records, report the invalid ones; never aborts.

        Returns the report plus the accepted doc ids (callers refresh
        federation for those)."""
        accepted: list[str] = []
        errors: list[IngestError] = []
        for ordinal, record in enumerate(records, start=1):
            try:
                if isinstance(record, _BadLine):
                    raise MalformedRecord(record.message)
                doc = record if isinstance(record, Document) else document_from_json(record)
                self.add(doc)
            except (MalformedRecord, ValidationError, DuplicateDoc) as exc:
                errors.append(IngestError(ordinal, exc.code, str(exc)))
                continue
            accepted.append(doc.doc_id)
        return IngestReport(len(accepted), tuple(errors)), accepted

    def ingest_lines(self, lines: Iterable[str]) -> tuple[IngestReport, list[str]]:
        def records():
            for line in lines:
                text = line.strip()
                if not text:
                    continue
                try:
                    yield json.loads(text)
                except json.JSONDecodeError as exc:
                    yield _BadLine(f"invalid JSON: {exc}")

        return self.ingest(records())


class _BadLine:
    """Sentinel carrying a parse failure through the ingest loop."""

    def __init__(self, message: str):
        self.message = message
