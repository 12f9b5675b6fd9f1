"""Edit operations on a decision document.

Every successful operation bumps the document version exactly once.
Tree edits never touch the grid; reconciling tables with the tree is
sync's job (see materialize), so removing a node leaves its table
stale on purpose until the next sync archives it.
"""

from __future__ import annotations

import copy

from .errors import NotFoundError, ValidationError
from .grid import CellAddress, CellValue, VirtualGrid
from .model import (
    IMPORTANCE_LEVELS,
    AttributeNode,
    DecisionDocument,
    ExclusionRecord,
    SubtreeSnapshot,
    Tombstone,
)


def _check_sibling_name(document: DecisionDocument, parent_id: int, name: str, skip: int | None = None) -> None:
    for cid in document.tree.children_of(parent_id):
        if cid != skip and document.tree.nodes[cid].name == name:
            raise ValidationError(
                f"node {document.tree.nodes[parent_id].name!r} already has a child named {name!r}"
            )


def add_child(document: DecisionDocument, parent_id: int, name: str) -> int:
    """Append a new primitive child under parent; returns its id."""
    document.tree.node(parent_id)
    if not name.strip():
        raise ValidationError("node name must not be blank")
    _check_sibling_name(document, parent_id, name)
    nid = document.tree.allocate_id()
    document.tree.nodes[nid] = AttributeNode(id=nid, name=name)
    document.tree.children[nid] = []
    document.tree.children[parent_id].append(nid)
    document.bump_version()
    return nid


def _snapshot_subtree(document: DecisionDocument, node_id: int) -> SubtreeSnapshot:
    node = document.tree.nodes[node_id]
    return SubtreeSnapshot(
        node=copy.deepcopy(node),
        children=[_snapshot_subtree(document, c) for c in document.tree.children[node_id]],
    )


def remove_node(document: DecisionDocument, node_id: int) -> Tombstone:
    """Detach a non-root subtree into a tombstone.

    Grid cells under the subtree's tables stay where they are; the next
    sync archives them into this same tombstone.
    """
    tree = document.tree
    tree.node(node_id)
    if node_id == tree.root_id:
        raise ValidationError("cannot remove the root node")
    parent_id = tree.parent_of(node_id)
    if parent_id is None:
        raise ValidationError(f"node {node_id} is not attached to the root")
    index = tree.children[parent_id].index(node_id)
    snapshot = _snapshot_subtree(document, node_id)
    for nid in snapshot.all_ids():
        del tree.nodes[nid]
        del tree.children[nid]
    tree.children[parent_id].remove(node_id)
    tombstone = Tombstone(
        removed_at_version=document.bump_version(),
        parent_id=parent_id,
        child_index=index,
        subtree=snapshot,
    )
    document.tombstones.append(tombstone)
    return tombstone


def restore_tombstone(document: DecisionDocument, tombstone: Tombstone) -> None:
    """Undo a removal: reattach the subtree, revive its dropped tables
    at their old anchors, and put archived judgments back.

    Column positions are realigned before the archived cells land, so
    applied right after the sync that filled the tombstone (the
    canonical undo) every judgment returns to the column it came from.
    Applied after further edits it still restores the tree, but cells
    keep their recorded addresses, which later layouts may not match.
    """
    from .materialize import SyncReport, _rebuild_table

    tree = document.tree
    if tombstone.subtree is not None:
        if tombstone.parent_id is None or not tree.has_node(tombstone.parent_id):
            raise NotFoundError(
                f"tombstone parent {tombstone.parent_id} no longer exists"
            )
        for nid in tombstone.subtree.all_ids():
            if tree.has_node(nid):
                raise ValidationError(f"node {nid} already present; cannot restore")
        _check_sibling_name(document, tombstone.parent_id, tombstone.subtree.node.name)

        def attach(snapshot: SubtreeSnapshot) -> None:
            node = copy.deepcopy(snapshot.node)
            tree.nodes[node.id] = node
            tree.children[node.id] = [child.node.id for child in snapshot.children]
            for child in snapshot.children:
                attach(child)

        attach(tombstone.subtree)
        index = min(tombstone.child_index or 0, len(tree.children[tombstone.parent_id]))
        tree.children[tombstone.parent_id].insert(index, tombstone.subtree.node.id)
        tree.next_id = max(tree.next_id, max(tombstone.subtree.all_ids()) + 1)

    affected: list[int] = []
    for entry in tombstone.tables:
        if tree.has_node(entry.node_id) and document.table_for(entry.node_id) is None:
            document.registry.append(copy.deepcopy(entry))
            affected.append(entry.node_id)
    if tombstone.parent_id is not None:
        affected.append(tombstone.parent_id)
    throwaway = SyncReport()
    for nid in affected:
        table = document.table_for(nid)
        if table is not None and tree.has_node(nid) and not tree.is_primitive(nid):
            _rebuild_table(document, table, throwaway)
    for addr, value in tombstone.cells:
        document.grid.set_cell(addr, value)
    if tombstone in document.tombstones:
        document.tombstones.remove(tombstone)
    document.bump_version()


def rename_node(document: DecisionDocument, node_id: int, name: str) -> None:
    node = document.tree.node(node_id)
    if not name.strip():
        raise ValidationError("node name must not be blank")
    parent_id = document.tree.parent_of(node_id)
    if parent_id is not None:
        _check_sibling_name(document, parent_id, name, skip=node_id)
    node.name = name
    document.bump_version()


def set_importance(document: DecisionDocument, node_id: int, level: int) -> None:
    node = document.tree.node(node_id)
    if level not in IMPORTANCE_LEVELS:
        raise ValidationError(
            f"importance must be one of {', '.join('x%d' % m for m in IMPORTANCE_LEVELS)}, got {level!r}"
        )
    node.importance = level
    document.bump_version()


def set_note(document: DecisionDocument, node_id: int, text: str) -> None:
    node = document.tree.node(node_id)
    node.note = text
    document.bump_version()


def exclude_alternative(document: DecisionDocument, label: str, rationale: str) -> None:
    """Take an alternative out of the running; it keeps its row and data."""
    alt = document.find_alternative(label)
    if alt.excluded is not None:
        raise ValidationError(f"alternative {label!r} is already excluded")
    if len(document.live_alternatives()) <= 2:
        raise ValidationError("at least 2 alternatives must stay in play")
    alt.excluded = ExclusionRecord(rationale=rationale, at_version=document.version + 1)
    document.bump_version()


def include_alternative(document: DecisionDocument, label: str) -> None:
    alt = document.find_alternative(label)
    if alt.excluded is None:
        raise ValidationError(f"alternative {label!r} is not excluded")
    alt.excluded = None
    document.bump_version()


def set_cells(document: DecisionDocument, writes: list[tuple[CellAddress, CellValue | None]]) -> None:
    """Apply a batch of cell writes as one versioned edit; None erases."""
    for addr, value in writes:
        if not isinstance(addr, CellAddress):
            raise ValidationError(f"not a cell address: {addr!r}")
        if value is not None and not isinstance(value, CellValue):
            raise ValidationError(f"not a cell value: {value!r}")
    for addr, value in writes:
        document.grid.set_cell(addr, value)
    document.bump_version()


def set_cell(document: DecisionDocument, addr: CellAddress, value: CellValue | None) -> None:
    set_cells(document, [(addr, value)])
