"""Document serialization and exports.

The JSON form is canonical: keys sorted, separators fixed, numbers
carried as decimal strings rendered without exponents.  Serializing the
same document twice gives identical bytes, which is what lets tests and
the service compare documents by their stored form.
"""

from __future__ import annotations

import csv
import fcntl
import io
import json
import os
from contextlib import contextmanager
from decimal import Decimal

from .errors import ParseError, SchemaVersionError, ValidationError
from .grid import (
    CellAddress,
    CellValue,
    ManagedTable,
    VirtualGrid,
    as_decimal,
    cell_display,
    decimal_str,
)
from .materialize import require_synced
from .model import (
    SCHEMA_VERSION,
    Alternative,
    AttributeNode,
    DecisionDocument,
    ExclusionRecord,
    LeafScale,
    SubtreeSnapshot,
    Tombstone,
    ValueTree,
    validate,
)
from .scoring import band_label, rank, rollup
from .suggest import tree_outline

FILE_SUFFIX = ".decision.json"

REDACTION_MODES = ("full", "bands", "ranks")


def cell_to_dict(value: CellValue) -> dict:
    if value.kind == "text":
        return {"kind": "text", "text": value.text}
    if value.kind == "number":
        return {"kind": "number", "value": decimal_str(value.number)}
    return {"kind": "mark", "count": value.count}


def cell_from_dict(data: dict) -> CellValue:
    kind = data.get("kind")
    try:
        if kind == "text":
            return CellValue("text", text=str(data["text"]))
        if kind == "number":
            return CellValue("number", number=as_decimal(str(data["value"])))
        if kind == "mark":
            return CellValue("mark", count=int(data["count"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed cell: {exc!r}") from exc
    raise ParseError(f"unknown cell kind {kind!r}")


def _node_to_dict(node: AttributeNode) -> dict:
    scale = None
    if node.leaf_scale is not None:
        scale = {
            "min": decimal_str(node.leaf_scale.min),
            "max": decimal_str(node.leaf_scale.max),
            "direction": node.leaf_scale.direction,
        }
    return {
        "id": node.id,
        "name": node.name,
        "importance": node.importance,
        "note": node.note,
        "leaf_scale": scale,
    }


def _node_from_dict(data: dict) -> AttributeNode:
    scale = None
    if data.get("leaf_scale") is not None:
        raw = data["leaf_scale"]
        scale = LeafScale(
            min=as_decimal(str(raw["min"])),
            max=as_decimal(str(raw["max"])),
            direction=str(raw["direction"]),
        )
    return AttributeNode(
        id=int(data["id"]),
        name=str(data["name"]),
        importance=int(data["importance"]),
        note=str(data.get("note", "")),
        leaf_scale=scale,
    )


def _table_to_dict(table: ManagedTable) -> dict:
    return {
        "node_id": table.node_id,
        "anchor": [table.anchor.row, table.anchor.col],
        "n_rows": table.n_rows,
        "n_cols": table.n_cols,
        "column_bindings": list(table.column_bindings),
    }


def _table_from_dict(data: dict) -> ManagedTable:
    return ManagedTable(
        node_id=int(data["node_id"]),
        anchor=CellAddress(int(data["anchor"][0]), int(data["anchor"][1])),
        n_rows=int(data["n_rows"]),
        n_cols=int(data["n_cols"]),
        column_bindings=[int(c) for c in data["column_bindings"]],
    )


def _snapshot_to_dict(snapshot: SubtreeSnapshot) -> dict:
    return {
        "node": _node_to_dict(snapshot.node),
        "children": [_snapshot_to_dict(c) for c in snapshot.children],
    }


def _snapshot_from_dict(data: dict) -> SubtreeSnapshot:
    return SubtreeSnapshot(
        node=_node_from_dict(data["node"]),
        children=[_snapshot_from_dict(c) for c in data["children"]],
    )


def document_to_dict(document: DecisionDocument) -> dict:
    return {
        "schema_version": document.schema_version,
        "id": document.id,
        "goal": document.goal,
        "scoring_goal": document.scoring_goal,
        "version": document.version,
        "alternatives": [
            {
                "label": alt.label,
                "declaration_index": alt.declaration_index,
                "excluded": None
                if alt.excluded is None
                else {"rationale": alt.excluded.rationale, "at_version": alt.excluded.at_version},
            }
            for alt in document.alternatives
        ],
        "tree": {
            "root_id": document.tree.root_id,
            "next_id": document.tree.next_id,
            "nodes": {str(nid): _node_to_dict(n) for nid, n in document.tree.nodes.items()},
            "children": {str(nid): list(kids) for nid, kids in document.tree.children.items()},
        },
        "grid": {
            "cells": {
                f"{addr.row},{addr.col}": cell_to_dict(value)
                for addr, value in document.grid.cells.items()
            }
        },
        "registry": [_table_to_dict(t) for t in document.registry],
        "tombstones": [
            {
                "removed_at_version": ts.removed_at_version,
                "parent_id": ts.parent_id,
                "child_index": ts.child_index,
                "subtree": None if ts.subtree is None else _snapshot_to_dict(ts.subtree),
                "cells": [
                    [[addr.row, addr.col], cell_to_dict(value)] for addr, value in ts.cells
                ],
                "tables": [_table_to_dict(t) for t in ts.tables],
            }
            for ts in document.tombstones
        ],
    }


def save(document: DecisionDocument) -> bytes:
    """Canonical UTF-8 JSON bytes; same document, same bytes, always."""
    problems = validate(document, for_sync=True)
    if problems:
        raise ValidationError("refusing to save a broken document: " + "; ".join(problems))
    return json.dumps(
        document_to_dict(document), sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def document_from_dict(data: dict) -> DecisionDocument:
    try:
        tree_raw = data["tree"]
        tree = ValueTree(
            nodes={int(k): _node_from_dict(v) for k, v in tree_raw["nodes"].items()},
            children={int(k): [int(c) for c in v] for k, v in tree_raw["children"].items()},
            root_id=int(tree_raw["root_id"]),
            next_id=int(tree_raw["next_id"]),
        )
        alternatives = [
            Alternative(
                label=str(a["label"]),
                declaration_index=int(a["declaration_index"]),
                excluded=None
                if a.get("excluded") is None
                else ExclusionRecord(
                    rationale=str(a["excluded"]["rationale"]),
                    at_version=int(a["excluded"]["at_version"]),
                ),
            )
            for a in data["alternatives"]
        ]
        cells: dict[CellAddress, CellValue] = {}
        for key, raw in data["grid"]["cells"].items():
            row_text, _, col_text = key.partition(",")
            cells[CellAddress(int(row_text), int(col_text))] = cell_from_dict(raw)
        registry = [_table_from_dict(t) for t in data["registry"]]
        tombstones = [
            Tombstone(
                removed_at_version=int(ts["removed_at_version"]),
                parent_id=None if ts.get("parent_id") is None else int(ts["parent_id"]),
                child_index=None if ts.get("child_index") is None else int(ts["child_index"]),
                subtree=None if ts.get("subtree") is None else _snapshot_from_dict(ts["subtree"]),
                cells=[
                    (CellAddress(int(addr[0]), int(addr[1])), cell_from_dict(value))
                    for addr, value in ts["cells"]
                ],
                tables=[_table_from_dict(t) for t in ts.get("tables", [])],
            )
            for ts in data["tombstones"]
        ]
        document = DecisionDocument(
            id=str(data["id"]),
            goal=str(data["goal"]),
            scoring_goal=str(data["scoring_goal"]),
            alternatives=alternatives,
            tree=tree,
            grid=VirtualGrid(cells=cells),
            registry=registry,
            tombstones=tombstones,
            version=int(data["version"]),
            schema_version=int(data["schema_version"]),
        )
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError, ValidationError) as exc:
        raise ParseError(f"malformed document: {exc!r}") from exc
    problems = validate(document, for_sync=True)
    if problems:
        raise ParseError("stored document is inconsistent: " + "; ".join(problems))
    return document


def load(data: bytes) -> DecisionDocument:
    """Rebuild a document from stored bytes; errors point at the problem."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8 at byte {exc.start}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON at position {exc.pos}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ParseError("top level must be a JSON object")
    version = raw.get("schema_version")
    if not isinstance(version, int):
        raise ParseError("missing integer schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"unsupported schema version {version} (this build reads {SCHEMA_VERSION})"
        )
    return document_from_dict(raw)


def export_tables_csv(document: DecisionDocument) -> dict[int, str]:
    """One RFC-4180 CSV per managed table, keyed by node id.

    Marks render as repeated X; empty cells stay empty.  The grid must
    be in step with the tree so the CSV reflects current children.
    """
    require_synced(document)
    out: dict[int, str] = {}
    for table in document.registry:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\r\n")
        for row in range(table.n_rows):
            writer.writerow(
                [
                    cell_display(
                        document.grid.get_cell(
                            CellAddress(table.anchor.row + row, table.anchor.col + col)
                        )
                    )
                    for col in range(table.n_cols)
                ]
            )
        out[table.node_id] = buffer.getvalue()
    return out


def export_report(document: DecisionDocument, redaction: str = "full") -> str:
    """Shareable text summary at one of three candor levels.

    ``full`` shows scores to three decimals; ``bands`` collapses them to
    low/mid/high; ``ranks`` gives only the order.  The two redacted
    modes carry no fractional numbers anywhere, so a score can't leak
    through formatting.
    """
    if redaction not in REDACTION_MODES:
        raise ValidationError(
            f"redaction must be one of {', '.join(REDACTION_MODES)}, got {redaction!r}"
        )
    ranking = rank(document)
    sheet = rollup(document)

    lines: list[str] = []
    lines.append(f"Decision: {document.goal}")
    if document.scoring_goal:
        lines.append(f"Scoring goal: {document.scoring_goal}")
    lines.append("")
    lines.append("Value tree:")
    lines.append(tree_outline(document))
    lines.append("")
    excluded = [alt for alt in document.alternatives if alt.excluded is not None]
    if excluded:
        lines.append("Excluded alternatives:")
        for alt in excluded:
            reason = alt.excluded.rationale or "no rationale given"
            lines.append(f"- {alt.label}: {reason}")
        lines.append("")

    if redaction == "full":
        lines.append("Scores:")
        position = 0
        for label, score in ranking:
            if score is None:
                lines.append(f"  {label}: no judgments yet")
            else:
                position += 1
                lines.append(f"  {position}. {label}: {score:.3f}")
    elif redaction == "bands":
        lines.append("Score bands:")
        for label, score in ranking:
            if score is None:
                lines.append(f"  {label}: not yet judged")
            else:
                lines.append(f"  {label}: {band_label(score)}")
    else:
        lines.append("Ranking (scores withheld):")
        for label, score in ranking:
            if score is None:
                lines.append(f"  {label} (not yet judged)")
            else:
                lines.append(f"  {label}")
    lines.append("")
    lines.append(f"Recommendation: {ranking[0][0]}")
    for note in sheet.diagnostics:
        lines.append(f"Note: {note}")
    return "\n".join(lines) + "\n"


def atomic_write(path: str, data: bytes) -> None:
    """Replace the file's contents all at once; readers never see halves."""
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


@contextmanager
def file_lock(path: str):
    """Exclusive advisory lock on a sidecar, shared by CLI and service."""
    lock_path = f"{path}.lock"
    with open(lock_path, "w") as fh:
        fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(fh.fileno(), fcntl.LOCK_UN)


def save_file(document: DecisionDocument, path: str) -> None:
    atomic_write(path, save(document))


def load_file(path: str) -> DecisionDocument:
    with open(path, "rb") as fh:
        return load(fh.read())
