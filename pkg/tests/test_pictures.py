from __future__ import annotations

import random

import pytest

from facetforge.errors import (
    BadOrder,
    DuplicateMember,
    SelfReference,
    UnknownClass,
    ValidationError,
)
from facetforge.facets import Facet
from facetforge.pictures import GraphConfig, Picture, PictureStore
from facetforge.registry import ClassEntry, Registry

from oracles import expand_bruteforce, merged_graph


def make_registry(*class_ids):
    reg = Registry()
    for class_id in class_ids:
        reg.add_class(
            ClassEntry(
                id=class_id,
                labels={"en": class_id.replace("-", " ")},
                definitions={"en": f"definition of {class_id}"},
            )
        )
    return reg


def pic(pid, focal, neighbors, instances=(), facet=Facet.APPLICATION, expert="e1"):
    return Picture(
        picture_id=pid,
        expert_id=expert,
        facet=facet,
        focal=focal,
        neighbors=tuple(neighbors),
        instances=tuple(instances),
    )


@pytest.fixture
def store():
    reg = make_registry("stent", "catheter", "conduit", "a", "b", "c", "d")
    return PictureStore(reg)


def test_upsert_creates_symmetric_edges(store):
    store.upsert_picture(pic("p1", "stent", [("catheter", 0.8), ("conduit", 0.5)]))
    graph = store.graph()
    assert graph.edge_weight("stent", "catheter") == 0.8
    assert graph.edge_weight("catheter", "stent") == 0.8
    assert graph.edge_weight("stent", "conduit") == 0.5
    assert graph.edge_weight("conduit", "stent") == 0.5


def test_bad_order_rejected(store):
    with pytest.raises(BadOrder):
        store.upsert_picture(pic("p1", "stent", [("a", 0.5), ("b", 0.8)]))
    # ties are allowed
    store.upsert_picture(pic("p2", "stent", [("a", 0.5), ("b", 0.5)]))


def test_self_reference_rejected(store):
    with pytest.raises(SelfReference):
        store.upsert_picture(pic("p1", "stent", [("stent", 0.5)]))
    with pytest.raises(SelfReference):
        store.upsert_picture(pic("p1", "stent", [], instances=["stent"]))


def test_duplicate_member_rejected(store):
    with pytest.raises(DuplicateMember):
        store.upsert_picture(pic("p1", "stent", [("a", 0.8), ("a", 0.8)]))
    with pytest.raises(DuplicateMember):
        store.upsert_picture(pic("p1", "stent", [("a", 0.8)], instances=["a"]))


def test_unknown_class_rejected(store):
    with pytest.raises(UnknownClass):
        store.upsert_picture(pic("p1", "stent", [("missing", 0.8)]))
    with pytest.raises(UnknownClass):
        store.upsert_picture(pic("p1", "missing", [("a", 0.8)]))


def test_similarity_range_enforced(store):
    for bad in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(ValidationError):
            store.upsert_picture(pic("p1", "stent", [("a", bad)]))


def test_replacing_picture_retracts_old_edges(store):
    store.upsert_picture(pic("p1", "stent", [("catheter", 0.8)]))
    store.upsert_picture(pic("p1", "stent", [("conduit", 0.6)]))
    graph = store.graph()
    assert graph.edge_weight("stent", "catheter") is None
    assert graph.edge_weight("stent", "conduit") == 0.6


def test_max_merge_with_provenance(store):
    store.upsert_picture(pic("p1", "stent", [("catheter", 0.6)]))
    store.upsert_picture(pic("p2", "stent", [("catheter", 0.9)], expert="e2"))
    views = store.merged_neighborhood("stent")
    assert len(views) == 1
    assert views[0].weight == 0.9
    assert views[0].provenance == ("p1", "p2")


def test_neighborhood_ordering_and_limit(store):
    store.upsert_picture(pic("p1", "stent", [("catheter", 0.8), ("conduit", 0.5)]))
    views = store.merged_neighborhood("stent")
    assert [(v.class_id, v.weight) for v in views] == [("catheter", 0.8), ("conduit", 0.5)]
    limited = store.merged_neighborhood("stent", limit=1)
    assert [(v.class_id, v.weight) for v in limited] == [("catheter", 0.8)]
    assert store.merged_neighborhood("a") == []
    with pytest.raises(UnknownClass):
        store.merged_neighborhood("missing")
    with pytest.raises(ValidationError):
        store.merged_neighborhood("stent", limit=0)


def test_neighborhood_facet_filter(store):
    store.upsert_picture(pic("p1", "stent", [("catheter", 0.8)], facet=Facet.APPLICATION))
    store.upsert_picture(pic("p2", "stent", [("a", 0.7)], facet=Facet.PROBLEM))
    app_only = store.merged_neighborhood("stent", facet=Facet.APPLICATION)
    assert [v.class_id for v in app_only] == ["catheter"]


def test_instance_edges_are_asymmetric(store):
    store.upsert_picture(pic("p1", "stent", [], instances=["catheter"]))
    graph = store.graph()
    assert graph.edge_weight("stent", "catheter") == 1.0
    assert graph.edge_weight("catheter", "stent") == 0.9
    views = store.merged_neighborhood("stent")
    assert views[0].relation == "instance"
    assert store.merged_neighborhood("catheter")[0].relation == "instance_of"


def test_instance_weights_configurable():
    reg = make_registry("stent", "catheter")
    store = PictureStore(reg, config=GraphConfig(focal_to_instance=0.8, instance_to_focal=1.0))
    store.upsert_picture(pic("p1", "stent", [], instances=["catheter"]))
    graph = store.graph()
    assert graph.edge_weight("stent", "catheter") == 0.8
    assert graph.edge_weight("catheter", "stent") == 1.0
    with pytest.raises(ValidationError):
        GraphConfig(focal_to_instance=0.0).validate()


def test_expand_zero_hops_is_identity(store):
    store.upsert_picture(pic("p1", "a", [("b", 0.8)]))
    assert store.expand("a", hops=0, threshold=0.05) == {"a": (1.0, ("a",))}


def test_expand_chain_products(store):
    store.upsert_picture(pic("p1", "a", [("b", 0.8)]))
    store.upsert_picture(pic("p2", "b", [("c", 0.5)]))
    result = store.expand("a", hops=2, threshold=0.05)
    assert result["a"] == (1.0, ("a",))
    assert result["b"] == (0.8, ("a", "b"))
    assert result["c"][0] == pytest.approx(0.4, abs=1e-12)
    assert result["c"][1] == ("a", "b", "c")


def test_expand_prefers_stronger_indirect_path(store):
    store.upsert_picture(pic("p1", "a", [("b", 0.7), ("d", 0.3)]))
    store.upsert_picture(pic("p2", "b", [("d", 0.7)]))
    result = store.expand("a", hops=2, threshold=0.05)
    assert result["d"][0] == pytest.approx(0.49, abs=1e-12)
    assert result["d"][1] == ("a", "b", "d")


def test_expand_threshold_prunes(store):
    store.upsert_picture(pic("p1", "a", [("b", 0.8)]))
    store.upsert_picture(pic("p2", "b", [("c", 0.5)]))
    result = store.expand("a", hops=2, threshold=0.5)
    assert "c" not in result
    assert set(result) == {"a", "b"}


def test_expand_validation(store):
    with pytest.raises(UnknownClass):
        store.expand("missing", 2, 0.05)
    with pytest.raises(ValidationError):
        store.expand("a", -1, 0.05)
    with pytest.raises(ValidationError):
        store.expand("a", 2, 0.0)
    with pytest.raises(ValidationError):
        store.expand("a", 2, 1.5)


def test_best_path_consistency(store):
    store.upsert_picture(pic("p1", "a", [("b", 0.8)]))
    store.upsert_picture(pic("p2", "b", [("c", 0.5)]))
    assert store.best_path("a", "a", 3) == (1.0, ("a",))
    sim, path = store.best_path("a", "c", 2)
    assert sim == pytest.approx(0.4, abs=1e-12)
    assert path == ("a", "b", "c")
    assert store.best_path("a", "d", 4) is None


def _random_store(rng, node_count):
    names = [f"n{i:02d}" for i in range(node_count)]
    reg = make_registry(*names)
    store = PictureStore(reg)
    payloads = []
    pid = 0
    for focal in names:
        others = [n for n in names if n != focal and rng.random() < 0.3]
        if not others:
            continue
        neighbors = sorted(
            ((n, round(rng.uniform(0.05, 0.95), 3)) for n in others),
            key=lambda p: -p[1],
        )
        pid += 1
        store.upsert_picture(pic(f"p{pid}", focal, neighbors))
        payloads.append(
            {"focal": focal, "neighbors": [[n, w] for n, w in neighbors], "instances": []}
        )
    return store, payloads, names


def test_expand_matches_bruteforce_on_random_graphs():
    rng = random.Random(20240811)
    for _ in range(30):
        node_count = rng.randint(2, 12)
        store, payloads, names = _random_store(rng, node_count)
        adj = merged_graph(payloads)
        seed = rng.choice(names)
        for hops in range(5):
            expected = expand_bruteforce(adj, seed, hops, theta=0.05)
            got = store.expand(seed, hops=hops, threshold=0.05)
            assert got.keys() == expected.keys()
            for node in expected:
                assert abs(got[node][0] - expected[node][0]) <= 1e-12
                assert got[node][1] == expected[node][1]


def test_hop_monotonicity(store):
    rng = random.Random(1)
    store, _, names = _random_store(rng, 10)
    seed = names[0]
    previous = store.expand(seed, hops=0, threshold=0.01)
    for hops in range(1, 5):
        current = store.expand(seed, hops=hops, threshold=0.01)
        for node, (sim, _) in previous.items():
            assert current[node][0] >= sim
        previous = current


def test_adding_picture_never_decreases_similarity(store):
    store.upsert_picture(pic("p1", "a", [("b", 0.6)]))
    store.upsert_picture(pic("p2", "b", [("c", 0.5)]))
    before = store.expand("a", hops=3, threshold=0.01)
    store.upsert_picture(pic("p3", "a", [("c", 0.4)], expert="e2"))
    after = store.expand("a", hops=3, threshold=0.01)
    for node, (sim, _) in before.items():
        assert after[node][0] >= sim


def test_expansion_is_deterministic(store):
    rng = random.Random(2)
    store, _, names = _random_store(rng, 12)
    first = store.expand(names[0], hops=3, threshold=0.02)
    store._expand_cache.clear()
    second = store.expand(names[0], hops=3, threshold=0.02)
    assert first == second


def test_path_product_bounds(store):
    rng = random.Random(3)
    store, _, names = _random_store(rng, 10)
    seed = names[0]
    graph = store.graph()
    result = store.expand(seed, hops=4, threshold=0.01)
    seed_max = max((w for _, w in graph.adjacency.get(seed, ())), default=0.0)
    for node, (sim, path) in result.items():
        if node == seed:
            continue
        assert sim <= seed_max + 1e-12
        step_weights = [
            graph.edge_weight(path[i], path[i + 1]) for i in range(len(path) - 1)
        ]
        assert sim <= min(step_weights) + 1e-12
