"""Pick-and-place federation of external classification schemes.

A mapping links one external code (say an IPC symbol) to one registry
class within one facet, with a similarity degree. Documents carrying
mapped codes receive derived assignments at that degree under the
synthetic classifier "federation:<scheme>", flowing through the normal
aggregation path. Derived assignments are regenerated from mappings and
document codes, never edited; removing a mapping removes exactly the
assignments it produced.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classification import Assignment, AssignmentStore
from .corpus import CorpusStore
from .errors import (
    DegreeOutOfRange,
    DuplicateMapping,
    MalformedRecord,
    UnknownScheme,
    ValidationError,
)
from .facets import Facet
from .registry import Registry

MappingKey = tuple[str, str, Facet, str]


@dataclass(frozen=True)
class Mapping:
    scheme: str
    external_code: str
    facet: Facet
    class_id: str
    sigma: float

    @property
    def key(self) -> MappingKey:
        return (self.scheme, self.external_code, self.facet, self.class_id)


@dataclass(frozen=True)
class DerivedReport:
    doc_id: str
    assignments: tuple[Assignment, ...]
    unmapped: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class CoverageReport:
    scheme: str
    codes_seen: int
    mapped: int
    unmapped: tuple[str, ...]


def mapping_to_json(m: Mapping) -> dict:
    return {
        "scheme": m.scheme,
        "code": m.external_code,
        "facet": m.facet.value,
        "class": m.class_id,
        "sigma": m.sigma,
    }


def mapping_from_json(obj: object) -> Mapping:
    if not isinstance(obj, dict):
        raise MalformedRecord("mapping must be an object")
    try:
        return Mapping(
            scheme=obj["scheme"],
            external_code=obj["code"],
            facet=Facet.parse(obj["facet"]),
            class_id=obj["class"],
            sigma=obj["sigma"],
        )
    except (KeyError, TypeError) as exc:
        raise MalformedRecord(f"bad mapping: {exc}") from None


class FederationStore:
    def __init__(self, registry: Registry, corpus: CorpusStore, assignments: AssignmentStore):
        self.registry = registry
        self.corpus = corpus
        self.assignments = assignments
        self._mappings: dict[MappingKey, Mapping] = {}
        self._by_code: dict[tuple[str, str], list[Mapping]] = {}

    def __len__(self) -> int:
        return len(self._mappings)

    def mappings(self) -> list[Mapping]:
        return [self._mappings[k] for k in sorted(self._mappings, key=_key_order)]

    def schemes(self) -> set[str]:
        return {m.scheme for m in self._mappings.values()}

    def add_mapping(self, mapping: Mapping, refresh: bool = True) -> None:
        if not mapping.scheme or not isinstance(mapping.scheme, str):
            raise ValidationError("scheme must be a non-empty string")
        if not mapping.external_code or not isinstance(mapping.external_code, str):
            raise ValidationError("external code must be a non-empty string")
        self.registry.require(mapping.class_id)
        if not isinstance(mapping.sigma, (int, float)) or not 0.0 < mapping.sigma <= 1.0:
            raise DegreeOutOfRange(f"sigma must be in (0,1], got {mapping.sigma!r}")
        if mapping.key in self._mappings:
            raise DuplicateMapping(f"mapping {mapping.key!r} already exists")
        stored = Mapping(
            mapping.scheme,
            mapping.external_code,
            mapping.facet,
            mapping.class_id,
            float(mapping.sigma),
        )
        self._mappings[stored.key] = stored
        self._by_code.setdefault((stored.scheme, stored.external_code), []).append(stored)
        if refresh:
            self._refresh_code(stored.scheme, stored.external_code)

    def remove_mapping(
        self, scheme: str, external_code: str, facet: Facet, class_id: str
    ) -> None:
        key = (scheme, external_code, facet, class_id)
        mapping = self._mappings.pop(key, None)
        if mapping is None:
            raise ValidationError(f"no such mapping {key!r}")
        self._by_code[(scheme, external_code)].remove(mapping)
        if not self._by_code[(scheme, external_code)]:
            del self._by_code[(scheme, external_code)]
        self._refresh_code(scheme, external_code)

    def _refresh_code(self, scheme: str, external_code: str) -> None:
        for doc_id in self.corpus.doc_ids():
            doc = self.corpus.get_document(doc_id)
            if (scheme, external_code) in doc.external_codes:
                self.apply_mappings(doc_id)

    def apply_mappings(self, doc_id: str) -> DerivedReport:
        """Regenerate the document's derived assignments from its codes.

        Deterministic in (document codes, mapping set); when several codes
        of one scheme map to the same (facet, class), the largest sigma
        wins because derived assignments share one classifier id per
        scheme.
        """

        doc = self.corpus.get_document(doc_id)
        derived: dict[tuple[Facet, str, str], float] = {}
        unmapped: list[tuple[str, str]] = []
        for scheme, code in doc.external_codes:
            mappings = self._by_code.get((scheme, code))
            if not mappings:
                unmapped.append((scheme, code))
                continue
            for m in mappings:
                key = (m.facet, m.class_id, m.scheme)
                if m.sigma > derived.get(key, 0.0):
                    derived[key] = m.sigma
        self.assignments.clear_derived(doc_id)
        out = []
        for (facet, class_id, scheme), sigma in sorted(
            derived.items(), key=lambda kv: (kv[0][0].value, kv[0][1], kv[0][2])
        ):
            out.append(self.assignments.put_derived(doc_id, facet, class_id, sigma, scheme))
        return DerivedReport(doc_id, tuple(out), tuple(sorted(set(unmapped))))

    def refresh_all(self) -> None:
        for doc_id in self.corpus.doc_ids():
            self.apply_mappings(doc_id)

    def coverage_report(self, scheme: str) -> CoverageReport:
        if scheme not in self.schemes():
            raise UnknownScheme(f"scheme {scheme!r} has no mappings")
        seen: set[str] = set()
        for doc_id in self.corpus.doc_ids():
            for s, code in self.corpus.get_document(doc_id).external_codes:
                if s == scheme:
                    seen.add(code)
        mapped = {code for code in seen if (scheme, code) in self._by_code}
        return CoverageReport(
            scheme=scheme,
            codes_seen=len(seen),
            mapped=len(mapped),
            unmapped=tuple(sorted(seen - mapped)),
        )


def _key_order(key: MappingKey) -> tuple[str, str, str, str]:
    scheme, code, facet, class_id = key
    return (scheme, code, facet.value, class_id)
