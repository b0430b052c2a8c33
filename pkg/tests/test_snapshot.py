from __future__ import annotations

import json

import pytest

from facetforge.demo import PRIOR_ART_QUERY, SOLUTION_QUERY, build_demo_engine
from facetforge.engine import Engine
from facetforge.errors import CorruptSnapshot, UnsupportedVersion
from facetforge.query import parse_query
from facetforge.snapshot import (
    canonical_json,
    dumps_snapshot,
    format_float,
    loads_snapshot,
)


def query_suite():
    queries = [PRIOR_ART_QUERY, SOLUTION_QUERY]
    for h in (0, 1, 2):
        queries.append({**PRIOR_ART_QUERY, "h": h})
    for theta in (0.01, 0.3, 0.8):
        queries.append({**SOLUTION_QUERY, "theta": theta})
    for facet in ("application", "problem", "solution", "technology_science"):
        queries.append(
            {
                "mode": "prior_art",
                "selections": {facet: PRIOR_ART_QUERY["selections"][facet]},
            }
        )
    queries.append({**PRIOR_ART_QUERY, "facet_weights": {"application": 2.5}})
    queries.append({**PRIOR_ART_QUERY, "facet_weights": {"problem": 0.5, "solution": 3.0}})
    queries.append({**SOLUTION_QUERY, "h": 1})
    queries.append({**SOLUTION_QUERY, "h": 4, "theta": 0.01})
    queries.append(
        {
            "mode": "prior_art",
            "selections": {
                "application": [["catheter", 0.7], ["conduit", 0.4]],
                "problem": [["fouling", 1.0]],
            },
        }
    )
    queries.append(
        {"mode": "prior_art", "selections": {"solution": [["sharkskin-lining", 1.0]]}}
    )
    queries.append(
        {"mode": "prior_art", "selections": {"operating_mode": [["in-situ", 0.9]]}}
    )
    queries.append({**PRIOR_ART_QUERY, "h": 4})
    assert len(queries) >= 20
    return queries


def run_suite(engine):
    return [engine.search(parse_query(q), top_k=20) for q in query_suite()]


def test_save_load_save_is_byte_identical():
    engine = build_demo_engine()
    first = dumps_snapshot(engine.snapshot_state())
    reloaded = Engine.from_state(loads_snapshot(first))
    second = dumps_snapshot(reloaded.snapshot_state())
    assert first == second


def test_search_results_survive_roundtrip():
    engine = build_demo_engine()
    before = run_suite(engine)
    reloaded = Engine.from_state(loads_snapshot(dumps_snapshot(engine.snapshot_state())))
    after = run_suite(reloaded)
    assert before == after


def test_truncated_snapshot_rejected():
    engine = build_demo_engine()
    data = dumps_snapshot(engine.snapshot_state())
    with pytest.raises(CorruptSnapshot):
        loads_snapshot(data[: len(data) // 2])


def test_checksum_mismatch_rejected():
    data = dumps_snapshot({"registry": [], "documents": []})
    tampered = data.replace(b'"documents":[]', b'"documents":[1]')
    with pytest.raises(CorruptSnapshot):
        loads_snapshot(tampered)


def test_unsupported_version_rejected():
    data = dumps_snapshot({"registry": []})
    tampered = data.replace(b"facetforge-snapshot/1", b"facetforge-snapshot/999")
    with pytest.raises(UnsupportedVersion):
        loads_snapshot(tampered)


def test_canonical_json_is_sorted_and_typed():
    text = canonical_json({"b": 1, "a": [1.0, 0.5, True, None, "x"]})
    assert text == '{"a":[1.0,0.5,true,null,"x"],"b":1}'


def test_float_formatting_roundtrips():
    for value in (0.1, 0.9, 1.0, 1 / 3, 0.05, 123456.789, 1e-17, 2.0**52 + 0.5):
        assert float(format_float(value)) == value
    assert format_float(1.0) == "1.0"
    assert json.loads(canonical_json({"x": 1.0}))["x"] == 1.0


def test_state_floats_reemit_identically():
    state = {"degree": 0.7, "sigma": 0.9, "weights": [0.1, 0.2, 0.3]}
    text1 = canonical_json(state)
    text2 = canonical_json(json.loads(text1))
    assert text1 == text2


def test_empty_engine_roundtrip(tmp_path):
    from facetforge.snapshot import load_snapshot, save_snapshot

    path = tmp_path / "empty.ffz"
    save_snapshot(Engine(), path)
    engine = load_snapshot(path)
    assert len(engine.corpus) == 0
    assert engine.registry.ids() == []
