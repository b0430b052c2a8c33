"""Operator workspace: a directory holding the engine state on disk.

Layout: ``snapshot.ffz`` (the last compacted state) plus ``wal.jsonl``,
a write-ahead log of mutations applied since that snapshot. Opening a
workspace loads the snapshot and replays the log, so a crash between
compactions loses nothing that was acknowledged. ``serve`` takes an
exclusive lock file while it owns the directory.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .classification import assignment_from_json
from .corpus import document_from_json
from .engine import Engine
from .errors import NonEmptyTarget, WorkspaceError
from .facets import Facet
from .federation import mapping_from_json
from .pictures import picture_from_json
from .registry import entry_from_json
from .snapshot import dumps_snapshot, loads_snapshot

SNAPSHOT_NAME = "snapshot.ffz"
WAL_NAME = "wal.jsonl"
LOCK_NAME = "serve.lock"

ENV_HOME = "FACETFORGE_HOME"


def default_workspace() -> Path:
    override = os.environ.get(ENV_HOME)
    if override:
        return Path(override)
    return Path.home() / ".facetforge"


class Workspace:
    def __init__(self, path: Path):
        self.path = Path(path)

    @property
    def snapshot_path(self) -> Path:
        return self.path / SNAPSHOT_NAME

    @property
    def wal_path(self) -> Path:
        return self.path / WAL_NAME

    @property
    def lock_path(self) -> Path:
        return self.path / LOCK_NAME

    # --- lifecycle --------------------------------------------------------

    @classmethod
    def init(cls, path: str | Path) -> "Workspace":
        target = Path(path)
        if target.exists() and any(target.iterdir()):
            raise NonEmptyTarget(f"{target} already exists and is not empty")
        target.mkdir(parents=True, exist_ok=True)
        ws = cls(target)
        ws.compact(Engine())
        return ws

    @classmethod
    def open(cls, path: str | Path) -> "Workspace":
        target = Path(path)
        if not (target / SNAPSHOT_NAME).is_file():
            raise WorkspaceError(f"{target} is not a workspace (run 'init' first)")
        return cls(target)

    def load_engine(self) -> Engine:
        engine = Engine.from_state(loads_snapshot(self.snapshot_path.read_bytes()))
        if self.wal_path.is_file():
            with self.wal_path.open(encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        replay(engine, json.loads(line))
        return engine

    def append(self, op: str, **data: object) -> None:
        record = {"op": op, **data}
        with self.wal_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")

    def compact(self, engine: Engine) -> None:
        self.snapshot_path.write_bytes(dumps_snapshot(engine.snapshot_state()))
        self.wal_path.write_text("", encoding="utf-8")

    # --- serve lock ---------------------------------------------------------

    def acquire_lock(self) -> None:
        try:
            fd = os.open(self.lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise WorkspaceError(
                f"workspace is locked by another process ({self.lock_path})"
            ) from None
        with os.fdopen(fd, "w") as fh:
            fh.write(str(os.getpid()))

    def release_lock(self) -> None:
        try:
            self.lock_path.unlink()
        except FileNotFoundError:
            pass


def replay(engine: Engine, record: dict) -> None:
    """Apply one write-ahead log record to the engine."""
    op = record.get("op")
    if op == "add_class":
        engine.add_class(entry_from_json(record["class"]))
    elif op == "deprecate_class":
        engine.deprecate_class(record["id"])
    elif op == "upsert_picture":
        engine.upsert_picture(picture_from_json(record["picture"]))
    elif op == "assign":
        engine.assign(**assignment_from_json(record["assignment"]))
    elif op == "set_reputation":
        engine.set_reputation(record["classifier"], record["reputation"])
    elif op == "add_document":
        engine.add_document(document_from_json(record["document"]))
    elif op == "add_mapping":
        engine.add_mapping(mapping_from_json(record["mapping"]))
    elif op == "remove_mapping":
        m = record["mapping"]
        engine.remove_mapping(m["scheme"], m["code"], Facet.parse(m["facet"]), m["class"])
    else:
        raise WorkspaceError(f"unknown write-ahead log op {op!r}")
