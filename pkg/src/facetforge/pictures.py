"""Expert similarity pictures and the merged expansion graph.

A picture is a one-dimensional similarity layout around a focal class:
related classes sit above it (nearer means more similar, so the neighbor
list is ordered by non-increasing similarity) and concrete instances sit
beneath it. All stored pictures merge into a single directed weighted
graph; query expansion walks that graph multiplying edge weights and
keeping the best product per reached class, so chained hops attenuate
multiplicatively.

Merge rule: the weight of an ordered edge is the maximum over all
contributing pictures, so no expert's judgment of relatedness is ever
weakened by another expert. Neighbor edges are symmetric; instance edges
are not (focal->instance carries full weight, instance->focal a
configurable discount).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadOrder,
    DuplicateMember,
    MalformedRecord,
    SelfReference,
    UnsupportedVersion,
    ValidationError,
)
from .facets import Facet
from .registry import Registry

PICTURE_FORMAT = "facetforge-picture/1"

RELATION_NEIGHBOR = "neighbor"
RELATION_INSTANCE = "instance"
RELATION_INSTANCE_OF = "instance_of"

#: sim_star and best path per reached class, keyed by class id.
ExpansionResult = dict[str, tuple[float, tuple[str, ...]]]


@dataclass(frozen=True)
class GraphConfig:
    """Weights applied to instance edges when pictures merge."""

    focal_to_instance: float = 1.0
    instance_to_focal: float = 0.9

    def validate(self) -> None:
        for name in ("focal_to_instance", "instance_to_focal"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ValidationError(f"{name} must be in (0,1], got {value!r}")


@dataclass(frozen=True)
class Picture:
    picture_id: str
    expert_id: str
    facet: Facet
    focal: str
    neighbors: tuple[tuple[str, float], ...]
    instances: tuple[str, ...] = ()


@dataclass(frozen=True)
class Contribution:
    """One picture's claim about an ordered class pair."""

    picture_id: str
    facet: Facet
    weight: float
    relation: str


@dataclass(frozen=True)
class NeighborView:
    class_id: str
    weight: float
    relation: str
    provenance: tuple[str, ...]


def picture_to_json(picture: Picture) -> dict:
    return {
        "format": PICTURE_FORMAT,
        "picture_id": picture.picture_id,
        "expert": picture.expert_id,
        "facet": picture.facet.value,
        "focal": picture.focal,
        "neighbors": [[c, w] for c, w in picture.neighbors],
        "instances": list(picture.instances),
    }


def picture_from_json(obj: object) -> Picture:
    if not isinstance(obj, dict):
        raise MalformedRecord("picture must be an object")
    if "format" in obj and obj["format"] != PICTURE_FORMAT:
        raise UnsupportedVersion(
            f"expected format {PICTURE_FORMAT!r}, got {obj['format']!r}"
        )
    try:
        neighbors = tuple((str(c), float(w)) for c, w in obj.get("neighbors", []))
        return Picture(
            picture_id=obj["picture_id"],
            expert_id=obj["expert"],
            facet=Facet.parse(obj["facet"]),
            focal=obj["focal"],
            neighbors=neighbors,
            instances=tuple(str(c) for c in obj.get("instances", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRecord(f"bad picture: {exc}") from None


def validate_picture(picture: Picture) -> None:
    if not picture.picture_id or not isinstance(picture.picture_id, str):
        raise ValidationError("picture_id must be a non-empty string")
    if not picture.expert_id or not isinstance(picture.expert_id, str):
        raise ValidationError("expert must be a non-empty string")
    seen: set[str] = set()
    previous = None
    for class_id, weight in picture.neighbors:
        if not 0.0 < weight < 1.0:
            raise ValidationError(
                f"similarity for {class_id!r} must be in the open interval (0,1)"
            )
        if class_id == picture.focal:
            raise SelfReference(f"focal {picture.focal!r} listed among neighbors")
        if class_id in seen:
            raise DuplicateMember(f"{class_id!r} appears twice in picture")
        seen.add(class_id)
        if previous is not None and weight > previous:
            raise BadOrder("neighbors must be ordered by non-increasing similarity")
        previous = weight
    for class_id in picture.instances:
        if class_id == picture.focal:
            raise SelfReference(f"focal {picture.focal!r} listed among instances")
        if class_id in seen:
            raise DuplicateMember(f"{class_id!r} appears twice in picture")
        seen.add(class_id)


class SimilarityGraph:
    """Immutable merged view of a set of pictures.

    ``contributions`` keeps every picture's claim per ordered pair so
    callers can re-merge under a facet filter; ``adjacency`` holds the
    max-merged weights sorted by descending weight (expansion relies on
    that order to cut off below-threshold candidates early).
    """

    def __init__(self, contributions: dict[tuple[str, str], tuple[Contribution, ...]]):
        self.contributions = contributions
        adjacency: dict[str, list[tuple[str, float]]] = {}
        for (src, dst), contribs in contributions.items():
            weight = max(c.weight for c in contribs)
            adjacency.setdefault(src, []).append((dst, weight))
        self.adjacency: dict[str, tuple[tuple[str, float], ...]] = {
            src: tuple(sorted(pairs, key=lambda p: (-p[1], p[0])))
            for src, pairs in adjacency.items()
        }

    def edge_weight(self, src: str, dst: str) -> float | None:
        contribs = self.contributions.get((src, dst))
        if not contribs:
            return None
        return max(c.weight for c in contribs)


def merge_contributions(
    contribs: tuple[Contribution, ...]
) -> tuple[float, str, tuple[str, ...]]:
    """Collapse one edge's contributions to (weight, relation, provenance).

    The relation is taken from the strongest contribution; ties break
    deterministically by relation name then picture id.
    """

    best = sorted(contribs, key=lambda c: (-c.weight, c.relation, c.picture_id))[0]
    provenance = tuple(sorted({c.picture_id for c in contribs}))
    return best.weight, best.relation, provenance


def _better(
    candidate: tuple[float, tuple[str, ...]], incumbent: tuple[float, tuple[str, ...]]
) -> bool:
    """Higher product wins; equal products prefer the lexicographically
    smaller class sequence (which also prefers shorter prefixes)."""

    if candidate[0] != incumbent[0]:
        return candidate[0] > incumbent[0]
    return candidate[1] < incumbent[1]


def expand_graph(
    graph: SimilarityGraph, seed: str, hops: int, threshold: float
) -> ExpansionResult:
    """Best-product expansion from ``seed`` over at most ``hops`` edges.

    Label-correcting sweep: each round extends only the entries improved
    in the previous round. Because every edge weight is <= 1, a partial
    product below ``threshold`` can never recover, so such entries are
    dropped eagerly.
    """

    best: ExpansionResult = {seed: (1.0, (seed,))}
    frontier = [seed]
    for _ in range(hops):
        if not frontier:
            break
        improved: dict[str, tuple[float, tuple[str, ...]]] = {}
        for src in frontier:
            sim, path = best[src]
            for dst, weight in graph.adjacency.get(src, ()):
                product = sim * weight
                if product < threshold:
                    break  # adjacency sorted by descending weight
                candidate = (product, path + (dst,))
                incumbent = improved.get(dst)
                if incumbent is None:
                    incumbent = best.get(dst)
                if incumbent is None or _better(candidate, incumbent):
                    improved[dst] = candidate
        best.update(improved)
        frontier = list(improved)
    return best


class ExpansionView:
    """A consistent read view: one graph snapshot plus its memo cache.

    Queries capture a view once and evaluate entirely against it, so a
    concurrent picture upsert never changes similarities mid-search. The
    cache dict is shared by every view of the same graph generation and
    abandoned (not mutated) when the graph is rebuilt.
    """

    def __init__(self, graph: SimilarityGraph, cache: dict):
        self.graph = graph
        self._cache = cache

    def expand(self, seed: str, hops: int, threshold: float) -> ExpansionResult:
        key = (seed, hops, threshold)
        result = self._cache.get(key)
        if result is None:
            if len(self._cache) > 4096:
                self._cache.clear()
            result = expand_graph(self.graph, seed, hops, threshold)
            self._cache[key] = result
        return result


class PictureStore:
    """Stores pictures (last write per picture_id wins) and derives the
    merged similarity graph plus expansions from them.

    Rebuilds are lazy: mutations only bump a generation counter, and the
    graph is re-derived on the next read. Expansions are memoized until
    the next mutation.
    """

    def __init__(self, registry: Registry, config: GraphConfig | None = None):
        self.registry = registry
        self.config = config or GraphConfig()
        self.config.validate()
        self._pictures: dict[str, Picture] = {}
        self.generation = 0
        self._graph: SimilarityGraph | None = None
        self._graph_generation = -1
        self._expand_cache: dict[tuple[str, int, float], ExpansionResult] = {}

    def __len__(self) -> int:
        return len(self._pictures)

    def picture_ids(self) -> list[str]:
        return sorted(self._pictures)

    def picture(self, picture_id: str) -> Picture:
        try:
            return self._pictures[picture_id]
        except KeyError:
            raise ValidationError(f"unknown picture {picture_id!r}") from None

    def upsert_picture(self, picture: Picture) -> str:
        validate_picture(picture)
        self.registry.require(picture.focal)
        for class_id, _ in picture.neighbors:
            self.registry.require(class_id)
        for class_id in picture.instances:
            self.registry.require(class_id)
        self._pictures[picture.picture_id] = picture
        self.generation += 1
        return picture.picture_id

    def graph(self) -> SimilarityGraph:
        if self._graph is None or self._graph_generation != self.generation:
            self._graph = self._build_graph()
            self._graph_generation = self.generation
            # Replace rather than clear: views of the old graph keep their
            # own cache, so generations never mix.
            self._expand_cache = {}
        return self._graph

    def view(self) -> ExpansionView:
        return ExpansionView(self.graph(), self._expand_cache)

    def _build_graph(self) -> SimilarityGraph:
        contribs: dict[tuple[str, str], list[Contribution]] = {}

        def put(src: str, dst: str, weight: float, relation: str, pic: Picture) -> None:
            contribs.setdefault((src, dst), []).append(
                Contribution(pic.picture_id, pic.facet, weight, relation)
            )

        for pid in sorted(self._pictures):
            pic = self._pictures[pid]
            for class_id, weight in pic.neighbors:
                put(pic.focal, class_id, weight, RELATION_NEIGHBOR, pic)
                put(class_id, pic.focal, weight, RELATION_NEIGHBOR, pic)
            for class_id in pic.instances:
                put(pic.focal, class_id, self.config.focal_to_instance, RELATION_INSTANCE, pic)
                put(class_id, pic.focal, self.config.instance_to_focal, RELATION_INSTANCE_OF, pic)

        return SimilarityGraph({pair: tuple(c) for pair, c in contribs.items()})

    def merged_neighborhood(
        self,
        class_id: str,
        facet: Facet | None = None,
        limit: int | None = None,
    ) -> list[NeighborView]:
        self.registry.require(class_id)
        if limit is not None and limit < 1:
            raise ValidationError(f"limit must be positive, got {limit!r}")
        graph = self.graph()
        views = []
        for (src, dst), contribs in graph.contributions.items():
            if src != class_id:
                continue
            if facet is not None:
                contribs = tuple(c for c in contribs if c.facet == facet)
                if not contribs:
                    continue
            weight, relation, provenance = merge_contributions(contribs)
            views.append(NeighborView(dst, weight, relation, provenance))
        views.sort(key=lambda v: (-v.weight, v.class_id))
        if limit is not None:
            views = views[:limit]
        return views

    def expand(self, seed: str, hops: int = 3, threshold: float = 0.05) -> ExpansionResult:
        self.registry.require(seed)
        if not isinstance(hops, int) or hops < 0:
            raise ValidationError(f"hop limit must be a non-negative integer, got {hops!r}")
        if not 0.0 < threshold <= 1.0:
            raise ValidationError(f"threshold must be in (0,1], got {threshold!r}")
        return self._expand_cached(seed, hops, threshold)

    def _expand_cached(self, seed: str, hops: int, threshold: float) -> ExpansionResult:
        return self.view().expand(seed, hops, threshold)

    def best_path(
        self, seed: str, target: str, hops: int = 3
    ) -> tuple[float, tuple[str, ...]] | None:
        self.registry.require(seed)
        self.registry.require(target)
        if not isinstance(hops, int) or hops < 0:
            raise ValidationError(f"hop limit must be a non-negative integer, got {hops!r}")
        # No threshold pruning here: report the best path however weak.
        result = expand_graph(self.graph(), seed, hops, 0.0)
        return result.get(target)
