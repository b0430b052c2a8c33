"""Whole-engine snapshot persistence.

One self-contained JSON file: {"checksum": ..., "format":
"facetforge-snapshot/1", "state": {...}}. The emitter is canonical
(sorted keys, compact separators, floats at 17 significant digits) so
the same state always produces identical bytes, in any implementation
that follows the format.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import TYPE_CHECKING

from .errors import CorruptSnapshot, UnsupportedVersion, ValidationError

if TYPE_CHECKING:
    from .engine import Engine

SNAPSHOT_FORMAT = "facetforge-snapshot/1"


def format_float(value: float) -> str:
    if math.isnan(value) or math.isinf(value):
        raise ValidationError("snapshots cannot contain NaN or infinite numbers")
    text = format(value, ".17g")
    # Keep the float/int distinction through a JSON round trip.
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


def canonical_json(value: object) -> str:
    out: list[str] = []
    _emit(value, out)
    return "".join(out)


def _emit(value: object, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_float(value))
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(value, dict):
        out.append("{")
        for i, key in enumerate(sorted(value)):
            if not isinstance(key, str):
                raise ValidationError(f"snapshot keys must be strings, got {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(":")
            _emit(value[key], out)
        out.append("}")
    else:
        raise ValidationError(f"cannot serialize {type(value).__name__} into a snapshot")


def _checksum(state: object) -> str:
    digest = hashlib.sha256(canonical_json(state).encode("utf-8")).hexdigest()
    return f"sha256:{digest}"


def dumps_snapshot(state: dict) -> bytes:
    envelope = {
        "checksum": _checksum(state),
        "format": SNAPSHOT_FORMAT,
        "state": state,
    }
    return (canonical_json(envelope) + "\n").encode("utf-8")


def loads_snapshot(data: bytes) -> dict:
    try:
        envelope = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptSnapshot(f"unreadable snapshot: {exc}") from None
    if not isinstance(envelope, dict):
        raise CorruptSnapshot("snapshot must be a JSON object")
    fmt = envelope.get("format")
    if fmt != SNAPSHOT_FORMAT:
        raise UnsupportedVersion(f"expected {SNAPSHOT_FORMAT!r}, got {fmt!r}")
    state = envelope.get("state")
    if not isinstance(state, dict):
        raise CorruptSnapshot("snapshot has no state object")
    if envelope.get("checksum") != _checksum(state):
        raise CorruptSnapshot("checksum mismatch")
    return state


def save_snapshot(engine: "Engine", destination: str | Path) -> None:
    Path(destination).write_bytes(dumps_snapshot(engine.snapshot_state()))


def load_snapshot(source: str | Path) -> "Engine":
    from .engine import Engine

    try:
        data = Path(source).read_bytes()
    except FileNotFoundError:
        raise CorruptSnapshot(f"no snapshot at {source}") from None
    return Engine.from_state(loads_snapshot(data))
