"""Reconcile managed tables with the value tree.

sync() is the only writer of managed regions.  It drops tables whose
node vanished or became primitive (archiving the judgments typed into
them), realigns surviving tables with their node's current children
(data follows its column binding, so reordering or inserting children
never loses a judgment), and lays down fresh tables for non-primitive
nodes that have none yet, stacked below everything already on the grid.

Deliberately not here: any reading of wall-clock time or any source of
randomness.  Given the same document, sync always produces the same
grid, which is what makes stored documents reproducible from edit logs.
"""

from __future__ import annotations

import copy
import re
from dataclasses import dataclass, field

from .errors import NotFoundError, SyncRequiredError, ValidationError
from .grid import (
    MARK,
    NUMBER,
    TEXT,
    CellAddress,
    CellValue,
    ManagedTable,
    Rect,
    allocate_region,
    text_cell,
)
from .model import (
    ABSENT_JUDGMENT,
    DecisionDocument,
    Judgment,
    Tombstone,
    mark_judgment,
    numeric_judgment,
    validate,
)

_MARK_RUN = re.compile(r"^[xX]+$")


@dataclass
class SyncReport:
    """What one sync changed, in tree terms rather than cell terms."""

    tables_created: list[int] = field(default_factory=list)
    tables_removed: list[int] = field(default_factory=list)
    columns_added: list[tuple[int, int]] = field(default_factory=list)
    columns_removed: list[tuple[int, int]] = field(default_factory=list)
    cells_archived: int = 0
    cells_moved: list[tuple[CellAddress, CellAddress]] = field(default_factory=list)

    def is_empty(self) -> bool:
        return (
            not self.tables_created
            and not self.tables_removed
            and not self.columns_added
            and not self.columns_removed
            and self.cells_archived == 0
            and not self.cells_moved
        )

    def summary(self) -> str:
        if self.is_empty():
            return "sync: no changes"
        parts = []
        if self.tables_created:
            parts.append(f"{len(self.tables_created)} table(s) created")
        if self.tables_removed:
            parts.append(f"{len(self.tables_removed)} table(s) removed")
        if self.columns_added:
            parts.append(f"{len(self.columns_added)} column(s) added")
        if self.columns_removed:
            parts.append(f"{len(self.columns_removed)} column(s) removed")
        if self.cells_archived:
            parts.append(f"{self.cells_archived} cell(s) archived")
        if self.cells_moved:
            parts.append(f"{len(self.cells_moved)} cell(s) moved out of the way")
        return "sync: " + ", ".join(parts)

    def to_dict(self) -> dict:
        return {
            "tables_created": list(self.tables_created),
            "tables_removed": list(self.tables_removed),
            "columns_added": [list(pair) for pair in self.columns_added],
            "columns_removed": [list(pair) for pair in self.columns_removed],
            "cells_archived": self.cells_archived,
            "cells_moved": [
                [[src.row, src.col], [dst.row, dst.col]] for src, dst in self.cells_moved
            ],
        }


def _archive_cells(
    document: DecisionDocument,
    responsible_node: int,
    cells: list[tuple[CellAddress, CellValue]],
    report: SyncReport,
) -> None:
    """Stash archived cells on the tombstone of the edit that doomed them."""
    if not cells:
        return
    report.cells_archived += len(cells)
    for tombstone in reversed(document.tombstones):
        if tombstone.covers_node(responsible_node):
            tombstone.cells.extend(cells)
            return
    document.tombstones.append(
        Tombstone(removed_at_version=document.version + 1, cells=list(cells))
    )


def _is_data_cell(table: ManagedTable, addr: CellAddress) -> bool:
    return addr.row > table.anchor.row and addr.col > table.anchor.col


def _drop_table(document: DecisionDocument, table: ManagedTable, report: SyncReport) -> None:
    archived: list[tuple[CellAddress, CellValue]] = []
    for addr in table.region().addresses():
        value = document.grid.get_cell(addr)
        if value is None:
            continue
        document.grid.set_cell(addr, None)
        if _is_data_cell(table, addr):
            archived.append((addr, value))
    document.registry.remove(table)
    report.tables_removed.append(table.node_id)
    report.cells_archived += len(archived)
    target = None
    for tombstone in reversed(document.tombstones):
        if tombstone.covers_node(table.node_id):
            target = tombstone
            break
    if target is None and archived:
        target = Tombstone(removed_at_version=document.version + 1)
        document.tombstones.append(target)
    if target is not None:
        target.cells.extend(archived)
        target.tables.append(copy.deepcopy(table))


def _relocate_collisions(document: DecisionDocument, target: Rect, keep_out: Rect, report: SyncReport) -> None:
    """Move user cells out of a region a table is about to grow into.

    The displaced block keeps its shape: every cell shifts down by the
    same amount, to just past the used range, and columns stay put.
    """
    colliding = [
        addr
        for addr in target.addresses()
        if not keep_out.contains(addr) and document.grid.get_cell(addr) is not None
    ]
    if not colliding:
        return
    used = document.grid.used_range()
    base = used.bottom + 2 if used is not None else 0
    top = min(addr.row for addr in colliding)
    for addr in colliding:
        dst = CellAddress(base + (addr.row - top), addr.col)
        document.grid.set_cell(dst, document.grid.get_cell(addr))
        document.grid.set_cell(addr, None)
        report.cells_moved.append((addr, dst))


def _rebuild_table(document: DecisionDocument, table: ManagedTable, report: SyncReport) -> None:
    tree = document.tree
    node = tree.nodes[table.node_id]
    current = list(tree.children_of(table.node_id))
    old = list(table.column_bindings)
    n_rows = 1 + len(document.alternatives)

    kept_data: dict[int, list[CellValue | None]] = {}
    for j, child_id in enumerate(old):
        column = [
            document.grid.get_cell(table.data_address(i, j))
            for i in range(len(document.alternatives))
        ]
        if child_id in current:
            kept_data[child_id] = column
        else:
            report.columns_removed.append((table.node_id, child_id))
            dropped = [
                (table.data_address(i, j), value)
                for i, value in enumerate(column)
                if value is not None
            ]
            _archive_cells(document, child_id, dropped, report)
    for child_id in current:
        if child_id not in old:
            report.columns_added.append((table.node_id, child_id))

    old_region = table.region()
    new_region = Rect(
        table.anchor.row,
        table.anchor.col,
        table.anchor.row + n_rows - 1,
        table.anchor.col + len(current),
    )
    if new_region.right > old_region.right or new_region.bottom > old_region.bottom:
        _relocate_collisions(document, new_region, old_region, report)

    for addr in set(old_region.addresses()) | set(new_region.addresses()):
        document.grid.set_cell(addr, None)

    table.column_bindings = current
    table.n_rows = n_rows
    table.n_cols = 1 + len(current)
    _write_table_frame(document, table)
    for j, child_id in enumerate(current):
        for i, value in enumerate(kept_data.get(child_id, [])):
            document.grid.set_cell(table.data_address(i, j), value)


def _write_table_frame(document: DecisionDocument, table: ManagedTable) -> None:
    tree = document.tree
    document.grid.set_cell(table.header_address(), text_cell(tree.nodes[table.node_id].name))
    for j, child_id in enumerate(table.column_bindings):
        addr = CellAddress(table.anchor.row, table.column_address(j))
        document.grid.set_cell(addr, text_cell(tree.nodes[child_id].name))
    for i, alt in enumerate(document.alternatives):
        document.grid.set_cell(table.label_address(i), text_cell(alt.label))


def sync(document: DecisionDocument) -> SyncReport:
    """Bring grid tables into step with the tree; returns what changed.

    All-or-nothing: a document that fails structural validation is
    rejected before anything is touched.  Running sync twice in a row
    changes nothing the second time.
    """
    violations = validate(document, for_sync=True)
    if violations:
        raise ValidationError("cannot sync: " + "; ".join(violations))

    report = SyncReport()
    tree = document.tree

    n_rows = 1 + len(document.alternatives)
    survivors = [
        table
        for table in document.registry
        if tree.has_node(table.node_id) and not tree.is_primitive(table.node_id)
    ]
    planned = [
        Rect(
            t.anchor.row,
            t.anchor.col,
            t.anchor.row + n_rows - 1,
            t.anchor.col + len(tree.children_of(t.node_id)),
        )
        for t in survivors
    ]
    for i, first in enumerate(planned):
        for second, other in zip(planned[i + 1 :], survivors[i + 1 :]):
            if first.overlaps(second):
                raise ValidationError(
                    "cannot sync: growing the table for node "
                    f"{survivors[i].node_id} would overlap the table for node {other.node_id}"
                )

    for table in list(document.registry):
        if not tree.has_node(table.node_id) or tree.is_primitive(table.node_id):
            _drop_table(document, table, report)

    for table in document.registry:
        _rebuild_table(document, table, report)

    registered = {table.node_id for table in document.registry}
    for nid in tree.preorder():
        if tree.is_primitive(nid) or nid in registered:
            continue
        children = tree.children_of(nid)
        table = ManagedTable(
            node_id=nid,
            anchor=allocate_region(document.grid, document.registry, n_rows, 1 + len(children)),
            n_rows=n_rows,
            n_cols=1 + len(children),
            column_bindings=list(children),
        )
        _write_table_frame(document, table)
        document.registry.append(table)
        report.tables_created.append(nid)

    document.bump_version()
    return report


def sync_pending(document: DecisionDocument) -> list[str]:
    """Reasons the grid is out of step with the tree (empty when synced)."""
    tree = document.tree
    problems: list[str] = []
    registered: dict[int, ManagedTable] = {}
    for table in document.registry:
        registered[table.node_id] = table
        if not tree.has_node(table.node_id):
            problems.append(f"table for removed node {table.node_id} still on the grid")
        elif tree.is_primitive(table.node_id):
            problems.append(
                f"table for {tree.nodes[table.node_id].name!r} targets a now-primitive node"
            )
        elif table.column_bindings != tree.children_of(table.node_id):
            problems.append(
                f"table for {tree.nodes[table.node_id].name!r} is out of step with its children"
            )
    for nid in tree.preorder():
        if not tree.is_primitive(nid) and nid not in registered:
            problems.append(f"{tree.nodes[nid].name!r} has no table yet")
    return problems


def require_synced(document: DecisionDocument) -> None:
    problems = sync_pending(document)
    if problems:
        raise SyncRequiredError("; ".join(problems) + " (run sync first)")


def decode_cell(value: CellValue | None) -> tuple[Judgment, bool]:
    """Read a data cell as a judgment.

    A run of X letters counts as that many marks.  Any other text is
    someone's note, not a judgment: (absent, True) so callers can flag it.
    """
    if value is None:
        return ABSENT_JUDGMENT, False
    if value.kind == NUMBER:
        return numeric_judgment(value.number), False
    if value.kind == MARK:
        return mark_judgment(value.count), False
    if value.kind == TEXT and _MARK_RUN.match(value.text):
        return mark_judgment(len(value.text)), False
    return ABSENT_JUDGMENT, True


def judgment_for(
    document: DecisionDocument, node_id: int, alt_index: int
) -> tuple[Judgment, CellAddress | None, bool]:
    """The judgment typed for a node in its parent's table, if any.

    Returns (judgment, cell address, note-text flag); the root has no
    parent column, so it is always (absent, None, False).
    """
    tree = document.tree
    tree.node(node_id)
    if node_id == tree.root_id:
        return ABSENT_JUDGMENT, None, False
    parent_id = tree.parent_of(node_id)
    table = document.table_for(parent_id)
    if table is None or node_id not in table.column_bindings:
        raise SyncRequiredError(
            f"no table column for {tree.nodes[node_id].name!r}; run sync first"
        )
    addr = table.data_address(alt_index, table.column_bindings.index(node_id))
    judgment, is_note = decode_cell(document.grid.get_cell(addr))
    return judgment, addr, is_note


@dataclass
class TableJudgments:
    """All judgments of one table, column by column, plus oddities seen."""

    node_id: int
    columns: dict[int, dict[str, Judgment]]
    diagnostics: list[str] = field(default_factory=list)


def read_judgments(document: DecisionDocument, node_id: int) -> TableJudgments:
    """Decode every data cell of a node's table.

    The node must be non-primitive and its table current; judging a
    primitive attribute happens in its parent's table, so asking for a
    primitive's own table is an error that says so.
    """
    tree = document.tree
    node = tree.node(node_id)
    if tree.is_primitive(node_id):
        raise ValidationError(
            f"{node.name!r} is primitive; its judgments live in its parent's table"
        )
    table = document.table_for(node_id)
    if table is None or table.column_bindings != tree.children_of(node_id):
        raise SyncRequiredError(f"table for {node.name!r} is missing or stale; run sync first")
    result = TableJudgments(node_id=node_id, columns={})
    for j, child_id in enumerate(table.column_bindings):
        column: dict[str, Judgment] = {}
        for i, alt in enumerate(document.alternatives):
            judgment, is_note = decode_cell(document.grid.get_cell(table.data_address(i, j)))
            column[alt.label] = judgment
            if is_note:
                result.diagnostics.append(
                    f"note text in column {tree.nodes[child_id].name!r} for "
                    f"{alt.label!r} treated as absent"
                )
        result.columns[child_id] = column
    return result
