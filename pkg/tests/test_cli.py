from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from facetforge.api import create_app
from facetforge.cli import main
from facetforge.demo import SOLUTION_QUERY
from facetforge.workspace import Workspace, default_workspace


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def ws(tmp_path):
    path = tmp_path / "ws"
    assert main(["-w", str(path), "init"]) == 0
    return path


@pytest.fixture
def demo_ws(tmp_path, capsys):
    path = tmp_path / "demo-ws"
    code, _, err = run(capsys, "demo", path)
    assert code == 0, err
    return path


def test_init_twice_fails(ws, capsys):
    code, _, err = run(capsys, "-w", ws, "init")
    assert code == 2
    assert "not empty" in err


def test_missing_workspace_is_io_error(tmp_path, capsys):
    code, _, err = run(capsys, "-w", tmp_path / "nowhere", "registry", "list")
    assert code == 3
    assert "init" in err


def test_unknown_command_is_usage_error(capsys):
    code, _, _ = run(capsys, "no-such-command")
    assert code == 1


def test_registry_add_and_list(ws, capsys):
    code, out, _ = run(
        capsys, "-w", ws, "registry", "add",
        "--id", "stent", "--label", "stent", "--definition", "tubular prosthesis",
    )
    assert code == 0
    assert out.strip() == "stent"
    code, out, _ = run(capsys, "-w", ws, "registry", "list", "--json")
    assert code == 0
    assert json.loads(out)["classes"][0]["id"] == "stent"
    # duplicate is a data error
    code, _, err = run(
        capsys, "-w", ws, "registry", "add",
        "--id", "stent", "--label", "other", "--definition", "x",
    )
    assert code == 2
    assert "duplicate_id" in err


def test_picture_add_bad_order_exit_code(demo_ws, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps(
            {
                "picture_id": "p-bad",
                "expert": "e1",
                "facet": "application",
                "focal": "stent",
                "neighbors": [["catheter", 0.5], ["conduit", 0.8]],
                "instances": [],
            }
        ),
        encoding="utf-8",
    )
    code, _, err = run(capsys, "-w", demo_ws, "picture", "add", bad)
    assert code == 2
    assert "bad_order" in err


def test_picture_show(demo_ws, capsys):
    code, out, _ = run(capsys, "-w", demo_ws, "picture", "show", "stent", "--json")
    assert code == 0
    body = json.loads(out)
    assert [n["class"] for n in body["neighbors"]][:2] == ["biliary-stent", "catheter"]


def test_search_json_matches_api_bytes(demo_ws, tmp_path, capsys):
    query_file = demo_ws / "seed" / "query-solution.json"
    code, out, _ = run(
        capsys, "-w", demo_ws, "search", "--query", query_file, "--json"
    )
    assert code == 0

    engine = Workspace.open(demo_ws).load_engine()
    client = TestClient(create_app(engine))
    api_body = client.post("/api/v1/search", json=SOLUTION_QUERY).content.decode("utf-8")
    assert out.strip() == api_body

    hits = json.loads(out)["hits"]
    assert hits[0]["doc"] == "pat-litho-catheter"


def test_search_mode_override(demo_ws, capsys):
    query_file = demo_ws / "seed" / "query-prior-art.json"
    code, out, _ = run(
        capsys, "-w", demo_ws, "search", "--query", query_file,
        "--mode", "solution", "--json",
    )
    assert code == 0
    solution_file = demo_ws / "seed" / "query-solution.json"
    code, out2, _ = run(
        capsys, "-w", demo_ws, "search", "--query", solution_file, "--json"
    )
    assert out == out2


def test_snapshot_save_load_roundtrip(demo_ws, tmp_path, capsys):
    query_file = demo_ws / "seed" / "query-prior-art.json"
    out_file = tmp_path / "state.ffz"

    code, before, _ = run(capsys, "-w", demo_ws, "search", "--query", query_file, "--json")
    assert code == 0
    assert run(capsys, "-w", demo_ws, "snapshot", "save", out_file)[0] == 0
    assert run(capsys, "-w", demo_ws, "snapshot", "load", out_file)[0] == 0
    code, after, _ = run(capsys, "-w", demo_ws, "search", "--query", query_file, "--json")
    assert code == 0
    assert before == after

    # a second save of the loaded state is byte-identical
    second = tmp_path / "state2.ffz"
    assert run(capsys, "-w", demo_ws, "snapshot", "save", second)[0] == 0
    assert out_file.read_bytes() == second.read_bytes()


def test_snapshot_load_corrupt_is_io_error(demo_ws, tmp_path, capsys):
    broken = tmp_path / "broken.ffz"
    broken.write_bytes(b'{"format":"facetforge-snapshot/1","state":{}}')
    code, _, err = run(capsys, "-w", demo_ws, "snapshot", "load", broken)
    assert code == 3


def test_ingest_classify_federate_flow(ws, tmp_path, capsys):
    for args in (
        ("registry", "add", "--id", "stent", "--label", "stent", "--definition", "d"),
        ("registry", "add", "--id", "catheter", "--label", "catheter", "--definition", "d"),
    ):
        assert run(capsys, "-w", ws, *args)[0] == 0

    corpus = tmp_path / "docs.jsonl"
    corpus.write_text(
        "\n".join(
            [
                json.dumps({"doc_id": "d1", "title": "One",
                            "external_codes": [["IPC", "A61F2/82"]]}),
                "{broken",
                json.dumps({"doc_id": "d2", "title": "Two"}),
            ]
        ),
        encoding="utf-8",
    )
    code, out, err = run(capsys, "-w", ws, "ingest", corpus)
    assert code == 0
    assert "accepted 2" in out
    assert "line 2" in err

    batch = tmp_path / "assignments.jsonl"
    batch.write_text(
        json.dumps({"doc": "d2", "facet": "application", "class": "catheter",
                    "degree": 0.8, "classifier": "c1"}) + "\n",
        encoding="utf-8",
    )
    code, out, _ = run(capsys, "-w", ws, "classify", batch)
    assert code == 0
    assert "recorded 1" in out

    mappings = tmp_path / "mappings.jsonl"
    mappings.write_text(
        json.dumps({"scheme": "IPC", "code": "A61F2/82", "facet": "application",
                    "class": "stent", "sigma": 0.9}) + "\n",
        encoding="utf-8",
    )
    assert run(capsys, "-w", ws, "federate", "map", mappings)[0] == 0
    code, out, _ = run(capsys, "-w", ws, "federate", "report", "IPC", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["codes_seen"] == 1
    assert report["mapped"] == 1

    code, out, _ = run(capsys, "-w", ws, "federate", "apply", "d1", "--json")
    assert code == 0
    derived = json.loads(out)["reports"][0]["assignments"]
    assert derived[0]["class"] == "stent"

    # state survives reopening (write-ahead log replay)
    query = tmp_path / "q.json"
    query.write_text(
        json.dumps({"mode": "prior_art", "h": 0,
                    "selections": {"application": [["stent", 1.0]]}}),
        encoding="utf-8",
    )
    code, out, _ = run(capsys, "-w", ws, "search", "--query", query, "--json")
    assert code == 0
    assert json.loads(out)["hits"][0]["doc"] == "d1"


def test_explain_command(demo_ws, capsys):
    query_file = demo_ws / "seed" / "query-solution.json"
    code, out, _ = run(
        capsys, "-w", demo_ws, "explain",
        "--doc", "pat-litho-catheter", "--query", query_file, "--json",
    )
    assert code == 0
    body = json.loads(out)
    assert body["matches"]["application"]["path"] == ["stent", "catheter"]


def test_default_workspace_env(monkeypatch, tmp_path):
    monkeypatch.setenv("FACETFORGE_HOME", str(tmp_path / "homews"))
    assert default_workspace() == tmp_path / "homews"
    assert main(["init"]) == 0
    assert (tmp_path / "homews" / "snapshot.ffz").is_file()


def test_serve_lock(demo_ws, monkeypatch, capsys):
    calls = {}

    def fake_run(app, host, port, log_level):
        calls["addr"] = (host, port)

    monkeypatch.setattr("uvicorn.run", fake_run)
    code, _, _ = run(capsys, "-w", demo_ws, "serve", "--addr", "127.0.0.1:8123")
    assert code == 0
    assert calls["addr"] == ("127.0.0.1", 8123)
    assert not (demo_ws / "serve.lock").exists()

    ws = Workspace.open(demo_ws)
    ws.acquire_lock()
    try:
        code, _, err = run(capsys, "-w", demo_ws, "serve")
        assert code == 3
        assert "locked" in err
    finally:
        ws.release_lock()
