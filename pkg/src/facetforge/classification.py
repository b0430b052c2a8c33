"""Crowd-submitted graded classifications and their aggregation.

Any number of classifiers may grade the same (document, facet, class)
triple; the store keeps the latest submission per classifier and
aggregates them into one degree by reputation-weighted arithmetic mean.
Absence of an assignment means degree zero, so the weighted mean stays
within [min, max] of the submitted degrees for any reputations.

Classifier ids starting with "federation:" are reserved for assignments
derived from external classification codes; those are regenerated, never
submitted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import CorpusStore
from .errors import DegreeOutOfRange, MalformedRecord, ValidationError
from .facets import Facet
from .registry import Registry

DERIVED_PREFIX = "federation:"


@dataclass(frozen=True)
class Assignment:
    doc_id: str
    facet: Facet
    class_id: str
    degree: float
    classifier_id: str
    seq: int


def assignment_to_json(a: Assignment) -> dict:
    return {
        "doc": a.doc_id,
        "facet": a.facet.value,
        "class": a.class_id,
        "degree": a.degree,
        "classifier": a.classifier_id,
    }


def assignment_from_json(obj: object) -> dict:
    """Parse one assignment record into keyword arguments for assign()."""
    if not isinstance(obj, dict):
        raise MalformedRecord("assignment must be an object")
    try:
        return {
            "doc_id": obj["doc"],
            "facet": Facet.parse(obj["facet"]),
            "class_id": obj["class"],
            "degree": obj["degree"],
            "classifier_id": obj["classifier"],
        }
    except (KeyError, TypeError) as exc:
        raise MalformedRecord(f"bad assignment: {exc}") from None


class AssignmentStore:
    def __init__(self, registry: Registry, corpus: CorpusStore):
        self.registry = registry
        self.corpus = corpus
        # (doc, facet) -> (class, classifier) -> latest assignment
        self._live: dict[tuple[str, Facet], dict[tuple[str, str], Assignment]] = {}
        self._profiles: dict[str, float] = {}
        self._next_seq = 1
        self.generation = 0

    # --- submissions -----------------------------------------------------

    def assign(
        self,
        doc_id: str,
        facet: Facet,
        class_id: str,
        degree: float,
        classifier_id: str,
    ) -> Assignment:
        if not isinstance(classifier_id, str) or not classifier_id:
            raise ValidationError("classifier id must be a non-empty string")
        if classifier_id.startswith(DERIVED_PREFIX):
            raise ValidationError(
                f"classifier ids starting with {DERIVED_PREFIX!r} are reserved"
            )
        return self._put(doc_id, facet, class_id, degree, classifier_id)

    def _put(
        self,
        doc_id: str,
        facet: Facet,
        class_id: str,
        degree: float,
        classifier_id: str,
        seq: int | None = None,
    ) -> Assignment:
        self.corpus.require(doc_id)
        self.registry.require(class_id)
        if not isinstance(degree, (int, float)) or not 0.0 < degree <= 1.0:
            raise DegreeOutOfRange(f"degree must be in (0,1], got {degree!r}")
        if seq is None:
            seq = self._next_seq
        self._next_seq = max(self._next_seq, seq + 1)
        assignment = Assignment(doc_id, facet, class_id, float(degree), classifier_id, seq)
        self._live.setdefault((doc_id, facet), {})[(class_id, classifier_id)] = assignment
        self.generation += 1
        return assignment

    def put_derived(
        self, doc_id: str, facet: Facet, class_id: str, degree: float, scheme: str
    ) -> Assignment:
        return self._put(doc_id, facet, class_id, degree, DERIVED_PREFIX + scheme)

    def clear_derived(self, doc_id: str) -> None:
        removed = False
        for (doc, _facet), group in self._live.items():
            if doc != doc_id:
                continue
            stale = [k for k, a in group.items() if a.classifier_id.startswith(DERIVED_PREFIX)]
            for key in stale:
                del group[key]
                removed = True
        if removed:
            self.generation += 1

    def restore(self, assignment: Assignment) -> None:
        """Re-insert a snapshotted assignment, preserving its sequence number."""
        self._put(
            assignment.doc_id,
            assignment.facet,
            assignment.class_id,
            assignment.degree,
            assignment.classifier_id,
            seq=assignment.seq,
        )

    # --- reputations ------------------------------------------------------

    def set_reputation(self, classifier_id: str, reputation: float) -> None:
        if not isinstance(reputation, (int, float)) or reputation < 0:
            raise ValidationError(f"reputation must be >= 0, got {reputation!r}")
        self._profiles[classifier_id] = float(reputation)
        self.generation += 1

    def reputation(self, classifier_id: str) -> float:
        return self._profiles.get(classifier_id, 1.0)

    @property
    def profiles(self) -> dict[str, float]:
        return dict(self._profiles)

    @property
    def next_seq(self) -> int:
        return self._next_seq

    @next_seq.setter
    def next_seq(self, value: int) -> None:
        self._next_seq = max(self._next_seq, int(value))

    # --- reads -------------------------------------------------------------

    def live_assignments(
        self, doc_id: str | None = None, crowd_only: bool = False
    ) -> list[Assignment]:
        out = []
        for (doc, _facet), group in self._live.items():
            if doc_id is not None and doc != doc_id:
                continue
            for a in group.values():
                if crowd_only and a.classifier_id.startswith(DERIVED_PREFIX):
                    continue
                out.append(a)
        out.sort(key=lambda a: (a.doc_id, a.facet.value, a.class_id, a.classifier_id))
        return out

    def assignments_for(self, doc_id: str, facet: Facet, class_id: str) -> list[Assignment]:
        group = self._live.get((doc_id, facet), {})
        return sorted(
            (a for (cls, _), a in group.items() if cls == class_id),
            key=lambda a: a.classifier_id,
        )

    def aggregated_degree(self, doc_id: str, facet: Facet, class_id: str) -> float | None:
        """Reputation-weighted mean of the live degrees, or None when there
        are no assignments or every reputation is zero."""
        weighted = 0.0
        total = 0.0
        for a in self.assignments_for(doc_id, facet, class_id):
            rep = self.reputation(a.classifier_id)
            weighted += rep * a.degree
            total += rep
        if total == 0.0:
            return None
        return weighted / total

    def facet_vector(self, doc_id: str, facet: Facet) -> dict[str, float]:
        self.corpus.require(doc_id)
        classes = sorted({cls for cls, _ in self._live.get((doc_id, facet), {})})
        vector = {}
        for class_id in classes:
            degree = self.aggregated_degree(doc_id, facet, class_id)
            if degree is not None:
                vector[class_id] = degree
        return vector

    def doc_facets(self) -> list[tuple[str, Facet]]:
        return sorted(self._live, key=lambda k: (k[0], k[1].value))
