"""HTTP service over a directory of decision documents.

Concurrency model: every accepted mutation names the document version
it was computed against; a stale version gets 409 and the caller is
expected to reload.  Writes to one document serialize behind an
in-process lock, mutate a copy, persist it atomically, then publish the
copy, so readers always see a complete document and the stored file
always matches some accepted version.  Replaying the accepted edits in
version order against a fresh document reproduces the stored bytes.
"""

from __future__ import annotations

import copy
import re
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse, Response

from . import ops
from .errors import (
    DecisionError,
    NotFoundError,
    ProviderError,
    ValidationError,
    VersionConflictError,
)
from .grid import CellAddress, number_cell, parse_cell_text
from .materialize import sync, sync_pending
from .model import DecisionDocument, new_decision
from .persistence import (
    FILE_SUFFIX,
    atomic_write,
    cell_from_dict,
    document_to_dict,
    export_report,
    export_tables_csv,
    file_lock,
    load,
    save,
)
from .scoring import band_label, rank, rollup
from .suggest import (
    RemoteCompletionProvider,
    StaticCorpusProvider,
    reflection_prompt,
    suggest_subattributes,
)

_DOC_ID = re.compile(r"^[A-Za-z0-9_-]+$")


class DocumentStore:
    """In-memory documents backed by one file each under storage_dir."""

    def __init__(self, storage_dir: str):
        self.storage_dir = Path(storage_dir)
        self.storage_dir.mkdir(parents=True, exist_ok=True)
        self._documents: dict[str, DecisionDocument] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        for path in sorted(self.storage_dir.glob(f"*{FILE_SUFFIX}")):
            document = load(path.read_bytes())
            self._documents[document.id] = document

    def _path(self, doc_id: str) -> str:
        return str(self.storage_dir / f"{doc_id}{FILE_SUFFIX}")

    def _lock_for(self, doc_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(doc_id, threading.Lock())

    def ids(self) -> list[str]:
        with self._registry_lock:
            return sorted(self._documents)

    def get(self, doc_id: str) -> DecisionDocument:
        """Current snapshot; safe to read without locking, never mutate."""
        try:
            return self._documents[doc_id]
        except KeyError:
            raise NotFoundError(f"no decision {doc_id!r}") from None

    def _persist(self, document: DecisionDocument) -> None:
        path = self._path(document.id)
        with file_lock(path):
            atomic_write(path, save(document))

    def create(
        self,
        goal: str,
        alternatives: list[str],
        attributes: list[str],
        scoring_goal: str = "",
        doc_id: str | None = None,
    ) -> DecisionDocument:
        if doc_id is not None and not _DOC_ID.match(doc_id):
            raise ValidationError(f"document id may use only letters, digits, - and _")
        document = new_decision(goal, alternatives, attributes, scoring_goal, doc_id=doc_id)
        with self._lock_for(document.id):
            if document.id in self._documents:
                raise ValidationError(f"decision {document.id!r} already exists")
            self._persist(document)
            self._documents[document.id] = document
        return document

    def apply(self, doc_id: str, base_version: int, mutate) -> tuple[DecisionDocument, dict]:
        """Run one mutation against the named version, persist, publish.

        The mutation callable works on a private copy; the published
        snapshot only changes after the new bytes are on disk, so a
        crash between the two leaves the file at the accepted version.
        """
        with self._lock_for(doc_id):
            current = self.get(doc_id)
            if base_version != current.version:
                raise VersionConflictError(current.version)
            working = copy.deepcopy(current)
            result = mutate(working) or {}
            self._persist(working)
            self._documents[doc_id] = working
            return working, result


def parse_cell_payload(value) -> object:
    """Decode the wire form of a cell write (None, number, text, or dict)."""
    if value is None:
        return None
    if isinstance(value, bool):
        raise ValidationError("cell value cannot be a boolean")
    if isinstance(value, (int, float)):
        return number_cell(value)
    if isinstance(value, str):
        return parse_cell_text(value)
    if isinstance(value, dict):
        return cell_from_dict(value)
    raise ValidationError(f"cannot interpret cell value {value!r}")


def _importance_level(raw) -> int:
    if isinstance(raw, str) and raw.lower().startswith("x"):
        raw = raw[1:]
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise ValidationError(f"bad importance level {raw!r}") from None


def _need(body: dict, key: str, kinds: type | tuple, what: str):
    if key not in body:
        raise ValidationError(f"missing field {key!r}")
    value = body[key]
    if kinds is int and isinstance(value, bool) or not isinstance(value, kinds):
        raise ValidationError(f"field {key!r} must be {what}")
    return value


def _edit_result(document: DecisionDocument, op: str, args: dict) -> dict:
    if op == "add_child":
        nid = ops.add_child(
            document,
            _need(args, "parent_id", int, "a node id"),
            _need(args, "name", str, "a string"),
        )
        return {"node_id": nid}
    if op == "remove_node":
        tombstone = ops.remove_node(document, _need(args, "node_id", int, "a node id"))
        return {"tombstone_index": document.tombstones.index(tombstone)}
    if op == "rename_node":
        ops.rename_node(
            document, _need(args, "node_id", int, "a node id"), _need(args, "name", str, "a string")
        )
        return {}
    if op == "set_importance":
        ops.set_importance(
            document, _need(args, "node_id", int, "a node id"), _importance_level(args.get("level"))
        )
        return {}
    if op == "set_note":
        ops.set_note(
            document, _need(args, "node_id", int, "a node id"), _need(args, "text", str, "a string")
        )
        return {}
    if op == "exclude_alternative":
        ops.exclude_alternative(
            document,
            _need(args, "label", str, "a string"),
            str(args.get("rationale", "")),
        )
        return {}
    if op == "include_alternative":
        ops.include_alternative(document, _need(args, "label", str, "a string"))
        return {}
    if op == "set_cells":
        cells = _need(args, "cells", list, "a list")
        writes = []
        for item in cells:
            if not isinstance(item, dict):
                raise ValidationError("each cell write must be an object")
            addr = CellAddress(
                _need(item, "row", int, "an integer"), _need(item, "col", int, "an integer")
            )
            writes.append((addr, parse_cell_payload(item.get("value"))))
        ops.set_cells(document, writes)
        return {"written": len(writes)}
    if op == "sync":
        report = sync(document)
        return {"report": report.to_dict()}
    raise ValidationError(f"unknown edit op {op!r}")


def _scores_payload(document: DecisionDocument, redaction: str) -> dict:
    ranking = rank(document)
    sheet = rollup(document)
    entries = []
    for label, score in ranking:
        if score is None:
            entries.append({"label": label, "missing": True})
        elif redaction == "full":
            entries.append(
                {"label": label, "score": score, "source": sheet.entries[label].source}
            )
        elif redaction == "bands":
            entries.append({"label": label, "band": band_label(score)})
        else:
            entries.append({"label": label})
    return {
        "redaction": redaction,
        "entries": entries,
        "recommendation": ranking[0][0],
        "diagnostics": sheet.diagnostics,
        "report": export_report(document, redaction),
    }


def create_app(
    storage_dir: str,
    corpus_path: str | None = None,
    suggest_endpoint: str | None = None,
    suggest_timeout: float = 10.0,
) -> FastAPI:
    app = FastAPI(title="decisiongrid")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = DocumentStore(storage_dir)
    app.state.store = store
    if suggest_endpoint:
        provider = RemoteCompletionProvider(suggest_endpoint, timeout=suggest_timeout)
        provider_name = "remote"
    else:
        provider = StaticCorpusProvider(corpus_path)
        provider_name = "static"

    @app.exception_handler(DecisionError)
    async def _decision_error(request: Request, exc: DecisionError):
        if isinstance(exc, VersionConflictError):
            return JSONResponse(
                {"error": str(exc), "current_version": exc.current_version}, status_code=409
            )
        if isinstance(exc, NotFoundError):
            return JSONResponse({"error": str(exc)}, status_code=404)
        if isinstance(exc, ProviderError):
            return JSONResponse({"error": str(exc)}, status_code=502)
        return JSONResponse({"error": str(exc)}, status_code=400)

    async def _json_body(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception:
            raise ValidationError("request body must be JSON") from None
        if not isinstance(body, dict):
            raise ValidationError("request body must be a JSON object")
        return body

    @app.get("/health")
    async def health():
        return {"ok": True, "decisions": len(store.ids())}

    @app.get("/decisions")
    async def list_decisions():
        summaries = []
        for doc_id in store.ids():
            document = store.get(doc_id)
            summaries.append(
                {
                    "id": document.id,
                    "goal": document.goal,
                    "scoring_goal": document.scoring_goal,
                    "version": document.version,
                }
            )
        return {"decisions": summaries}

    @app.post("/decisions", status_code=201)
    async def create_decision(request: Request):
        body = await _json_body(request)
        document = store.create(
            goal=_need(body, "goal", str, "a string"),
            alternatives=_need(body, "alternatives", list, "a list of labels"),
            attributes=body.get("attributes", []),
            scoring_goal=str(body.get("scoring_goal", "")),
            doc_id=body.get("id"),
        )
        return {"id": document.id, "version": document.version, "document": document_to_dict(document)}

    @app.get("/decisions/{doc_id}")
    async def get_decision(doc_id: str):
        return document_to_dict(store.get(doc_id))

    @app.get("/decisions/{doc_id}/file")
    async def get_decision_file(doc_id: str):
        return Response(content=save(store.get(doc_id)), media_type="application/json")

    @app.get("/decisions/{doc_id}/status")
    async def get_status(doc_id: str):
        document = store.get(doc_id)
        return {
            "id": document.id,
            "version": document.version,
            "sync_pending": sync_pending(document),
            "live_alternatives": [alt.label for alt in document.live_alternatives()],
        }

    @app.post("/decisions/{doc_id}/edits")
    async def post_edit(doc_id: str, request: Request):
        body = await _json_body(request)
        base_version = _need(body, "base_version", int, "an integer")
        op = _need(body, "op", str, "a string")
        args = body.get("args", {})
        if not isinstance(args, dict):
            raise ValidationError("field 'args' must be an object")
        document, result = store.apply(
            doc_id, base_version, lambda working: _edit_result(working, op, args)
        )
        return {"id": document.id, "version": document.version, "result": result}

    @app.get("/decisions/{doc_id}/scores")
    async def get_scores(doc_id: str, redaction: str = "full"):
        return _scores_payload(store.get(doc_id), redaction)

    @app.get("/decisions/{doc_id}/report")
    async def get_report(doc_id: str, redaction: str = "full"):
        return PlainTextResponse(export_report(store.get(doc_id), redaction))

    @app.get("/decisions/{doc_id}/export.csv")
    async def get_csv(doc_id: str, node: int):
        document = store.get(doc_id)
        tables = export_tables_csv(document)
        if node not in tables:
            raise NotFoundError(f"no table for node {node}")
        return Response(
            content=tables[node],
            media_type="text/csv",
            headers={"Content-Disposition": f'attachment; filename="table-{node}.csv"'},
        )

    @app.get("/decisions/{doc_id}/suggestions")
    async def get_suggestions(doc_id: str, node: int, k: int = 5):
        document = store.get(doc_id)
        candidates = suggest_subattributes(document, node, k=k, provider=provider)
        return {"node": node, "provider": provider_name, "candidates": candidates}

    @app.get("/decisions/{doc_id}/prompt")
    async def get_prompt(doc_id: str, node: int):
        document = store.get(doc_id)
        return {"node": node, "prompt": reflection_prompt(document, node)}

    return app


def serve(
    storage_dir: str,
    host: str = "127.0.0.1",
    port: int = 8000,
    corpus_path: str | None = None,
    suggest_endpoint: str | None = None,
    suggest_timeout: float = 10.0,
) -> None:
    import uvicorn

    app = create_app(
        storage_dir,
        corpus_path=corpus_path,
        suggest_endpoint=suggest_endpoint,
        suggest_timeout=suggest_timeout,
    )
    uvicorn.run(app, host=host, port=port)
