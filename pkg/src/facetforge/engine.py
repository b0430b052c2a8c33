"""The assembled search engine.

Wires the registry, pictures, classifications, corpus and federation
together and evaluates queries:

    facet score  S_f(d) = max over selections (q,w) of
                          w * max over classes c of sim*(q,c) * degree_f(d,c)
    final score  score(d) = sum_f W_f * S_f(d) / sum_f W_f   (active facets)

sim* is the best-product expansion from the pictures module, degree the
aggregated classification degree. Documents scoring zero are not ranked.
In solution mode the solution facet is dropped from the query before
anything is scored.

Scoring runs over per-facet posting arrays (class -> documents carrying
it, with aggregated degrees) so the hot loop is a scatter-max per
expanded class; see facetforge.backend for the kernel selection.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .backend import scatter_max
from .classification import AssignmentStore
from .corpus import CorpusStore, Document, IngestReport
from .errors import EmptyQuery, NotMatched, UnknownClass, ValidationError
from .facets import FACET_ORDER, Facet
from .federation import FederationStore, Mapping
from .pictures import GraphConfig, Picture, PictureStore
from .query import (
    Explanation,
    FacetMatch,
    Query,
    QueryMode,
    ScoredHit,
    SearchResult,
)
from .registry import ClassEntry, Registry


@dataclass(frozen=True)
class _Postings:
    doc_idx: np.ndarray  # int32 positions into the sorted doc id list
    degrees: np.ndarray  # float64 aggregated degrees


class _SearchIndex:
    """Immutable posting view of the classification state; swapped whole."""

    def __init__(self, doc_ids: tuple[str, ...], postings: dict[Facet, dict[str, _Postings]]):
        self.doc_ids = doc_ids
        self.doc_pos = {doc_id: i for i, doc_id in enumerate(doc_ids)}
        self.postings = postings


class Engine:
    def __init__(self, config: GraphConfig | None = None):
        self.registry = Registry()
        self.corpus = CorpusStore()
        self.pictures = PictureStore(self.registry, config=config)
        self.classifications = AssignmentStore(self.registry, self.corpus)
        self.federation = FederationStore(self.registry, self.corpus, self.classifications)
        self._lock = threading.RLock()
        self._index: _SearchIndex | None = None
        self._index_generation: tuple[int, int] | None = None

    @property
    def config(self) -> GraphConfig:
        return self.pictures.config

    # --- mutations (single writer) ---------------------------------------

    def add_class(self, entry: ClassEntry) -> str:
        with self._lock:
            return self.registry.add_class(entry)

    def deprecate_class(self, class_id: str) -> None:
        with self._lock:
            self.registry.deprecate(class_id)

    def upsert_picture(self, picture: Picture) -> str:
        with self._lock:
            return self.pictures.upsert_picture(picture)

    def assign(self, doc_id, facet, class_id, degree, classifier_id):
        with self._lock:
            return self.classifications.assign(doc_id, facet, class_id, degree, classifier_id)

    def set_reputation(self, classifier_id: str, reputation: float) -> None:
        with self._lock:
            self.classifications.set_reputation(classifier_id, reputation)

    def add_document(self, doc: Document) -> str:
        with self._lock:
            doc_id = self.corpus.add(doc)
            if doc.external_codes:
                self.federation.apply_mappings(doc_id)
            return doc_id

    def ingest(self, records) -> IngestReport:
        with self._lock:
            report, accepted = self.corpus.ingest(records)
            self._refresh_new_docs(accepted)
            return report

    def ingest_lines(self, lines) -> IngestReport:
        with self._lock:
            report, accepted = self.corpus.ingest_lines(lines)
            self._refresh_new_docs(accepted)
            return report

    def _refresh_new_docs(self, doc_ids: list[str]) -> None:
        for doc_id in doc_ids:
            if self.corpus.get_document(doc_id).external_codes:
                self.federation.apply_mappings(doc_id)

    def add_mapping(self, mapping: Mapping) -> None:
        with self._lock:
            self.federation.add_mapping(mapping)

    def remove_mapping(self, scheme, external_code, facet, class_id) -> None:
        with self._lock:
            self.federation.remove_mapping(scheme, external_code, facet, class_id)

    # --- index -------------------------------------------------------------

    def search_index(self) -> _SearchIndex:
        with self._lock:
            generation = (self.corpus.generation, self.classifications.generation)
            if self._index is None or self._index_generation != generation:
                self._index = self._build_index()
                self._index_generation = generation
            return self._index

    def _build_index(self) -> _SearchIndex:
        doc_ids = tuple(self.corpus.doc_ids())
        doc_pos = {doc_id: i for i, doc_id in enumerate(doc_ids)}
        rows: dict[Facet, dict[str, tuple[list[int], list[float]]]] = {f: {} for f in FACET_ORDER}
        for doc_id, facet in self.classifications.doc_facets():
            pos = doc_pos.get(doc_id)
            if pos is None:
                continue
            vector = self.classifications.facet_vector(doc_id, facet)
            for class_id, degree in vector.items():
                idx, deg = rows[facet].setdefault(class_id, ([], []))
                idx.append(pos)
                deg.append(degree)
        postings: dict[Facet, dict[str, _Postings]] = {}
        for facet, classes in rows.items():
            postings[facet] = {
                class_id: _Postings(
                    np.asarray(idx, dtype=np.intc), np.asarray(deg, dtype=np.float64)
                )
                for class_id, (idx, deg) in classes.items()
            }
        return _SearchIndex(doc_ids, postings)

    # --- query evaluation ----------------------------------------------------

    def active_facets(self, query: Query) -> list[Facet]:
        active = [f for f in FACET_ORDER if query.selections.get(f)]
        if query.mode == QueryMode.SOLUTION:
            active = [f for f in active if f != Facet.SOLUTION]
        if not active:
            raise EmptyQuery("no active facets remain after mode filtering")
        return active

    def _check_selections(self, query: Query, facets: list[Facet]) -> None:
        for facet in facets:
            for sel in query.selections[facet]:
                if sel.class_id not in self.registry:
                    raise UnknownClass(f"unknown class {sel.class_id!r} in query")

    def _facet_score_array(
        self, query: Query, facet: Facet, index: _SearchIndex, view
    ) -> np.ndarray:
        scores = np.zeros(len(index.doc_ids), dtype=np.float64)
        facet_postings = index.postings[facet]
        for sel in query.selections[facet]:
            expansion = view.expand(sel.class_id, query.hops, query.threshold)
            for class_id, (similarity, _path) in expansion.items():
                postings = facet_postings.get(class_id)
                if postings is None:
                    continue
                scatter_max(scores, postings.doc_idx, postings.degrees, sel.weight * similarity)
        return scores

    def search(self, query: Query, top_k: int = 20) -> SearchResult:
        if not isinstance(top_k, int) or top_k < 1:
            raise ValidationError(f"top_k must be a positive integer, got {top_k!r}")
        facets = self.active_facets(query)
        with self._lock:
            self._check_selections(query, facets)
            index = self.search_index()
            view = self.pictures.view()

        facet_arrays = {f: self._facet_score_array(query, f, index, view) for f in facets}
        total = np.zeros(len(index.doc_ids), dtype=np.float64)
        weight_sum = 0.0
        for facet in facets:
            weight = query.weight_of(facet)
            total += weight * facet_arrays[facet]
            weight_sum += weight
        total /= weight_sum

        order = np.argsort(-total, kind="stable")  # ties keep ascending doc id
        positive = int(np.count_nonzero(total > 0.0))
        hits = []
        for pos in order[: min(top_k, positive)]:
            hits.append(
                ScoredHit(
                    doc_id=index.doc_ids[pos],
                    score=float(total[pos]),
                    facet_scores={f: float(facet_arrays[f][pos]) for f in facets},
                )
            )
        return SearchResult(hits=tuple(hits), total=positive)

    def facet_score(self, doc_id: str, facet: Facet, query: Query) -> float:
        facets = self.active_facets(query)
        if facet not in facets:
            raise ValidationError(f"facet {facet.value!r} is not active in this query")
        with self._lock:
            self.corpus.require(doc_id)
            self._check_selections(query, [facet])
            score, _match = self._best_facet_match(doc_id, facet, query, self.pictures.view())
        return score

    def _best_facet_match(
        self, doc_id: str, facet: Facet, query: Query, view
    ) -> tuple[float, FacetMatch | None]:
        """Evaluate one facet for one document, keeping the argmax term.

        Candidates are scanned in selection order and ascending class id,
        so equal contributions resolve to the earliest selection and the
        smallest class; identical to the array path bit-for-bit because
        the same multiplication order is used.
        """

        vector = self.classifications.facet_vector(doc_id, facet)
        best = 0.0
        best_match: FacetMatch | None = None
        for sel in query.selections[facet]:
            expansion = view.expand(sel.class_id, query.hops, query.threshold)
            for class_id in sorted(expansion):
                degree = vector.get(class_id)
                if degree is None:
                    continue
                similarity, path = expansion[class_id]
                contribution = (sel.weight * similarity) * degree
                if contribution > best:
                    best = contribution
                    best_match = FacetMatch(
                        facet=facet,
                        query_class=sel.class_id,
                        weight=sel.weight,
                        path=path,
                        matched_class=class_id,
                        matched_degree=degree,
                        similarity=similarity,
                        contribution=contribution,
                    )
        return best, best_match

    def explain(self, doc_id: str, query: Query) -> Explanation:
        facets = self.active_facets(query)
        with self._lock:
            self.corpus.require(doc_id)
            self._check_selections(query, facets)
            view = self.pictures.view()
            per_facet = [
                (facet, self._best_facet_match(doc_id, facet, query, view))
                for facet in facets
            ]

        facet_scores: dict[Facet, float] = {}
        matches: dict[Facet, FacetMatch] = {}
        weighted = 0.0
        weight_sum = 0.0
        for facet, (score, match) in per_facet:
            facet_scores[facet] = score
            if match is not None:
                matches[facet] = match
            weighted += query.weight_of(facet) * score
            weight_sum += query.weight_of(facet)
        score = weighted / weight_sum
        if score <= 0.0:
            raise NotMatched(f"document {doc_id!r} does not match this query")
        return Explanation(doc_id=doc_id, score=score, facet_scores=facet_scores, matches=matches)

    # --- snapshot wiring ------------------------------------------------------

    def snapshot_state(self) -> dict:
        from .classification import assignment_to_json
        from .corpus import document_to_json
        from .federation import mapping_to_json
        from .pictures import picture_to_json
        from .registry import entry_to_json

        crowd = self.classifications.live_assignments(crowd_only=True)
        return {
            "config": {
                "focal_to_instance": self.config.focal_to_instance,
                "instance_to_focal": self.config.instance_to_focal,
            },
            "registry": [entry_to_json(self.registry.entry(i)) for i in self.registry.ids()],
            "documents": [
                document_to_json(self.corpus.get_document(i)) for i in self.corpus.doc_ids()
            ],
            "pictures": [
                picture_to_json(self.pictures.picture(i)) for i in self.pictures.picture_ids()
            ],
            "assignments": [
                assignment_to_json(a) | {"seq": a.seq} for a in crowd
            ],
            "profiles": self.classifications.profiles,
            "mappings": [mapping_to_json(m) for m in self.federation.mappings()],
            "next_seq": self.classifications.next_seq,
        }

    @classmethod
    def from_state(cls, state: dict) -> "Engine":
        from .classification import Assignment, assignment_from_json
        from .corpus import document_from_json
        from .federation import mapping_from_json
        from .pictures import picture_from_json
        from .registry import entry_from_json

        config = state.get("config", {})
        engine = cls(
            config=GraphConfig(
                focal_to_instance=config.get("focal_to_instance", 1.0),
                instance_to_focal=config.get("instance_to_focal", 0.9),
            )
        )
        for obj in state.get("registry", []):
            engine.registry.add_class(entry_from_json(obj))
        for obj in state.get("documents", []):
            engine.corpus.add(document_from_json(obj))
        for obj in state.get("pictures", []):
            engine.pictures.upsert_picture(picture_from_json(obj))
        for obj in state.get("assignments", []):
            kwargs = assignment_from_json(obj)
            engine.classifications.restore(
                Assignment(
                    doc_id=kwargs["doc_id"],
                    facet=kwargs["facet"],
                    class_id=kwargs["class_id"],
                    degree=kwargs["degree"],
                    classifier_id=kwargs["classifier_id"],
                    seq=obj.get("seq", 0),
                )
            )
        for classifier_id, reputation in state.get("profiles", {}).items():
            engine.classifications.set_reputation(classifier_id, reputation)
        for obj in state.get("mappings", []):
            engine.federation.add_mapping(mapping_from_json(obj), refresh=False)
        engine.federation.refresh_all()
        engine.classifications.next_seq = state.get("next_seq", 1)
        return engine
