"""Operator command line.

Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 I/O or
snapshot error. ``--json`` switches machine-readable output; for
``search --json`` the bytes equal the HTTP API response body for the
same query and state.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import wire
from .classification import assignment_from_json
from .corpus import document_to_json
from .demo import seed_workspace
from .engine import Engine
from .errors import (
    CorruptSnapshot,
    FacetForgeError,
    UnsupportedVersion,
    WorkspaceError,
)
from .facets import Facet
from .federation import mapping_from_json, mapping_to_json
from .pictures import picture_from_json, picture_to_json
from .query import QueryMode, parse_query
from .registry import DEFAULT_LANG, ClassEntry, entry_to_json
from .snapshot import dumps_snapshot, loads_snapshot
from .workspace import Workspace, default_workspace


@click.group()
@click.option(
    "--workspace",
    "-w",
    "workspace_path",
    type=click.Path(path_type=Path),
    default=None,
    help="Workspace directory (default: $FACETFORGE_HOME or ~/.facetforge).",
)
@click.pass_context
def cli(ctx: click.Context, workspace_path: Path | None) -> None:
    ctx.obj = workspace_path or default_workspace()


def _open(ctx: click.Context) -> tuple[Workspace, Engine]:
    ws = Workspace.open(ctx.obj)
    return ws, ws.load_engine()


def _echo_json(payload: object) -> None:
    click.echo(wire.dump_json(payload))


@cli.command()
@click.pass_context
def init(ctx: click.Context) -> None:
    """Create an empty workspace."""
    ws = Workspace.init(ctx.obj)
    click.echo(f"initialized workspace at {ws.path}")


# --- registry ---------------------------------------------------------------

@cli.group()
def registry() -> None:
    """Manage the controlled vocabulary."""


@registry.command("import")
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.pass_context
def registry_import(ctx: click.Context, file: Path) -> None:
    ws, engine = _open(ctx)
    payload = json.loads(file.read_text(encoding="utf-8"))
    count = engine.registry.load_payload(payload)
    for obj in payload["classes"]:
        ws.append("add_class", **{"class": obj})
    click.echo(f"imported {count} classes")


@registry.command("add")
@click.option("--id", "class_id", required=True)
@click.option("--label", required=True)
@click.option("--definition", required=True)
@click.option("--lang", default=DEFAULT_LANG, show_default=True)
@click.option("--created-by", default="", help="Expert id recorded as the author.")
@click.pass_context
def registry_add(
    ctx: click.Context, class_id: str, label: str, definition: str, lang: str, created_by: str
) -> None:
    ws, engine = _open(ctx)
    labels = {lang: label}
    definitions = {lang: definition}
    if lang != DEFAULT_LANG:
        labels[DEFAULT_LANG] = label
        definitions[DEFAULT_LANG] = definition
    entry = ClassEntry(
        id=class_id, labels=labels, definitions=definitions, created_by=created_by
    )
    engine.add_class(entry)
    ws.append("add_class", **{"class": entry_to_json(entry)})
    click.echo(class_id)


@registry.command("list")
@click.option("--prefix", default=None)
@click.option("--lang", default=DEFAULT_LANG, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def registry_list(ctx: click.Context, prefix: str | None, lang: str, as_json: bool) -> None:
    _, engine = _open(ctx)
    views = engine.registry.list_classes(prefix=prefix, lang=lang)
    if as_json:
        _echo_json({"classes": [wire.localized_to_json(v) for v in views]})
        return
    for v in views:
        click.echo(f"{v.id}\t{v.label}\t{v.status}")


# --- pictures -----------------------------------------------------------------

@cli.group()
def picture() -> None:
    """Manage expert similarity pictures."""


@picture.command("add")
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.pass_context
def picture_add(ctx: click.Context, file: Path) -> None:
    ws, engine = _open(ctx)
    obj = json.loads(file.read_text(encoding="utf-8"))
    pic = picture_from_json(obj)
    engine.upsert_picture(pic)
    ws.append("upsert_picture", picture=picture_to_json(pic))
    click.echo(pic.picture_id)


@picture.command("show")
@click.argument("class_id")
@click.option("--facet", default=None)
@click.option("--limit", default=None, type=int)
@click.option("--lang", default=DEFAULT_LANG, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def picture_show(
    ctx: click.Context,
    class_id: str,
    facet: str | None,
    limit: int | None,
    lang: str,
    as_json: bool,
) -> None:
    """Show the merged neighborhood of a class."""
    _, engine = _open(ctx)
    facet_value = Facet.parse(facet) if facet else None
    payload = wire.neighborhood_to_json(engine, class_id, facet_value, limit, lang)
    if as_json:
        _echo_json(payload)
        return
    click.echo(f"{payload['class']['id']}: {payload['class']['definition']}")
    for n in payload["neighbors"]:
        click.echo(
            f"  {n['class']:<24} {n['weight']:<6g} {n['relation']:<12} "
            f"[{', '.join(n['provenance'])}]"
        )


# --- corpus -------------------------------------------------------------------

@cli.command()
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.pass_context
def ingest(ctx: click.Context, file: Path) -> None:
    """Ingest a JSON-lines corpus file."""
    ws, engine = _open(ctx)
    before = set(engine.corpus.doc_ids())
    report = engine.ingest_lines(file.read_text(encoding="utf-8").splitlines())
    for doc_id in engine.corpus.doc_ids():
        if doc_id not in before:
            ws.append("add_document", document=document_to_json(engine.corpus.get_document(doc_id)))
    click.echo(f"accepted {report.accepted}, errors {len(report.errors)}")
    for e in report.errors:
        click.echo(f"  line {e.ordinal}: {e.code}: {e.message}", err=True)


@cli.command()
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.pass_context
def classify(ctx: click.Context, file: Path) -> None:
    """Submit a JSON-lines batch of assignments."""
    ws, engine = _open(ctx)
    count = 0
    for lineno, line in enumerate(file.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
            engine.assign(**assignment_from_json(record))
        except (json.JSONDecodeError, FacetForgeError) as exc:
            raise click.ClickException(f"line {lineno}: {exc}") from exc
        ws.append("assign", assignment=record)
        count += 1
    click.echo(f"recorded {count} assignments")


# --- federation ------------------------------------------------------------------

@cli.group()
def federate() -> None:
    """Map external classification codes onto registry classes."""


@federate.command("map")
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.pass_context
def federate_map(ctx: click.Context, file: Path) -> None:
    ws, engine = _open(ctx)
    count = 0
    for line in file.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line:
            continue
        mapping = mapping_from_json(json.loads(line))
        engine.add_mapping(mapping)
        ws.append("add_mapping", mapping=mapping_to_json(mapping))
        count += 1
    click.echo(f"added {count} mappings")


@federate.command("apply")
@click.argument("doc_id", required=False)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def federate_apply(ctx: click.Context, doc_id: str | None, as_json: bool) -> None:
    _, engine = _open(ctx)
    doc_ids = [doc_id] if doc_id else engine.corpus.doc_ids()
    reports = [engine.federation.apply_mappings(d) for d in doc_ids]
    if as_json:
        _echo_json({"reports": [wire.derived_report_to_json(r) for r in reports]})
        return
    for r in reports:
        if r.assignments or r.unmapped:
            click.echo(f"{r.doc_id}: {len(r.assignments)} derived")
            for a in r.assignments:
                click.echo(f"  {a.facet.value}:{a.class_id} = {a.degree:g}")
            for scheme, code in r.unmapped:
                click.echo(f"  unmapped {scheme}:{code}")


@federate.command("report")
@click.argument("scheme")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def federate_report(ctx: click.Context, scheme: str, as_json: bool) -> None:
    _, engine = _open(ctx)
    report = engine.federation.coverage_report(scheme)
    if as_json:
        _echo_json(wire.coverage_to_json(report))
        return
    click.echo(f"scheme {report.scheme}: {report.codes_seen} codes seen, {report.mapped} mapped")
    for code in report.unmapped:
        click.echo(f"  unmapped {code}")


# --- search ------------------------------------------------------------------------

@cli.command()
@click.option("--query", "query_file", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--top", default=20, show_default=True, help="Maximum hits returned.")
@click.option("--mode", default=None, type=click.Choice([m.value for m in QueryMode]),
              help="Override the mode in the query document.")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def search(ctx: click.Context, query_file: Path, top: int, mode: str | None, as_json: bool) -> None:
    """Run a query document against the corpus."""
    _, engine = _open(ctx)
    obj = json.loads(query_file.read_text(encoding="utf-8"))
    if mode is not None:
        obj["mode"] = mode
    query = parse_query(obj)
    result = engine.search(query, top_k=top)
    if as_json:
        _echo_json(wire.search_result_to_json(result))
        return
    click.echo(f"{result.total} matching documents")
    for rank, hit in enumerate(result.hits, start=1):
        facets = " ".join(f"{f.value}={s:.3f}" for f, s in hit.facet_scores.items())
        click.echo(f"{rank:>3}. {hit.doc_id:<24} {hit.score:.6f}  {facets}")


@cli.command()
@click.option("--doc", "doc_id", required=True)
@click.option("--query", "query_file", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--mode", default=None, type=click.Choice([m.value for m in QueryMode]))
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def explain(ctx: click.Context, doc_id: str, query_file: Path, mode: str | None, as_json: bool) -> None:
    """Explain why a document matches a query."""
    _, engine = _open(ctx)
    obj = json.loads(query_file.read_text(encoding="utf-8"))
    if mode is not None:
        obj["mode"] = mode
    explanation = engine.explain(doc_id, parse_query(obj))
    if as_json:
        _echo_json(wire.explanation_to_json(explanation))
        return
    click.echo(f"{explanation.doc_id} score {explanation.score:.6f}")
    for facet, match in explanation.matches.items():
        path = " -> ".join(match.path)
        click.echo(
            f"  {facet.value}: {match.query_class} ~ {match.matched_class} "
            f"(path {path}) sim {match.similarity:g} x degree {match.matched_degree:g} "
            f"x weight {match.weight:g} = {match.contribution:g}"
        )


# --- snapshots -----------------------------------------------------------------------

@cli.group()
def snapshot() -> None:
    """Save or load engine snapshots."""


@snapshot.command("save")
@click.argument("path", required=False, type=click.Path(path_type=Path))
@click.pass_context
def snapshot_save(ctx: click.Context, path: Path | None) -> None:
    """Write the current state to PATH (default: compact the workspace)."""
    ws, engine = _open(ctx)
    if path is None:
        ws.compact(engine)
        click.echo(f"compacted {ws.snapshot_path}")
    else:
        path.write_bytes(dumps_snapshot(engine.snapshot_state()))
        click.echo(f"saved {path}")


@snapshot.command("load")
@click.argument("path", type=click.Path(exists=True, path_type=Path))
@click.pass_context
def snapshot_load(ctx: click.Context, path: Path) -> None:
    """Replace the workspace state with the snapshot at PATH."""
    ws = Workspace.open(ctx.obj)
    engine = Engine.from_state(loads_snapshot(path.read_bytes()))
    ws.compact(engine)
    click.echo(f"loaded {path}")


# --- service ----------------------------------------------------------------------------

@cli.command()
@click.option("--addr", default="127.0.0.1:8080", show_default=True)
@click.pass_context
def serve(ctx: click.Context, addr: str) -> None:
    """Serve the HTTP API over the workspace (exclusive lock)."""
    import uvicorn

    from .api import create_app

    ws, engine = _open(ctx)
    host, _, port_text = addr.rpartition(":")
    if not host or not port_text.isdigit():
        raise click.UsageError(f"--addr must be host:port, got {addr!r}")
    ws.acquire_lock()
    try:
        uvicorn.run(create_app(engine), host=host, port=int(port_text), log_level="warning")
    finally:
        ws.release_lock()


@cli.command()
@click.argument("target", type=click.Path(path_type=Path))
def demo(target: Path) -> None:
    """Seed TARGET with the demonstration corpus."""
    ws = seed_workspace(target)
    click.echo(f"seeded demo workspace at {ws.path}")
    click.echo("try: facetforge -w "
               f"{ws.path} search --query {ws.path / 'seed' / 'query-solution.json'} --json")


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 2
    except (UnsupportedVersion, CorruptSnapshot, WorkspaceError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 3
    except FacetForgeError as exc:
        detail = f" at {exc.path}" if exc.path else ""
        click.echo(f"error: {exc.code}: {exc}{detail}", err=True)
        return 2
    except click.Abort:
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
