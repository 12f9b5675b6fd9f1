"""Core decision document: value tree, alternatives, tombstones.

A decision is a goal plus a fixed set of alternatives and a tree of
attributes refined to whatever depth helps.  Non-primitive attributes
get a managed table in the grid (see materialize); judgments typed into
those tables drive scoring.  Nothing here touches wall-clock time: all
bookkeeping uses the document version counter so that replaying an edit
log reproduces a document byte for byte.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from decimal import Decimal

from .errors import NotFoundError, ValidationError
from .grid import CellAddress, CellValue, ManagedTable, VirtualGrid, as_decimal

SCHEMA_VERSION = 1

IMPORTANCE_LEVELS = (1, 2, 4, 10)

HIGHER_IS_BETTER = "higher_is_better"
LOWER_IS_BETTER = "lower_is_better"


@dataclass(frozen=True)
class LeafScale:
    """Numeric scale for judging a primitive attribute."""

    min: Decimal
    max: Decimal
    direction: str = HIGHER_IS_BETTER

    def __post_init__(self):
        object.__setattr__(self, "min", as_decimal(self.min))
        object.__setattr__(self, "max", as_decimal(self.max))
        if self.min >= self.max:
            raise ValidationError(f"scale min {self.min} must be below max {self.max}")
        if self.direction not in (HIGHER_IS_BETTER, LOWER_IS_BETTER):
            raise ValidationError(f"unknown scale direction {self.direction!r}")


DEFAULT_SCALE = LeafScale(Decimal(0), Decimal(10), HIGHER_IS_BETTER)

NUMERIC = "numeric"
MARK = "mark"
ABSENT = "absent"


@dataclass(frozen=True)
class Judgment:
    """What a table cell says about one alternative on one attribute."""

    kind: str
    number: Decimal | None = None
    count: int = 0

    def __post_init__(self):
        if self.kind not in (NUMERIC, MARK, ABSENT):
            raise ValidationError(f"unknown judgment kind {self.kind!r}")

    @property
    def is_absent(self) -> bool:
        return self.kind == ABSENT


ABSENT_JUDGMENT = Judgment(ABSENT)


def numeric_judgment(value) -> Judgment:
    return Judgment(NUMERIC, number=as_decimal(value))


def mark_judgment(count: int) -> Judgment:
    if count < 1:
        raise ValidationError(f"mark count must be positive, got {count}")
    return Judgment(MARK, count=count)


@dataclass
class AttributeNode:
    id: int
    name: str
    importance: int = 1
    note: str = ""
    leaf_scale: LeafScale | None = None


@dataclass
class ExclusionRecord:
    rationale: str
    at_version: int


@dataclass
class Alternative:
    label: str
    declaration_index: int
    excluded: ExclusionRecord | None = None


@dataclass
class ValueTree:
    """Rooted ordered tree of attributes.

    Every node id appears in both maps; child lists keep insertion
    order, which is what table columns and tie-breaking rely on.  Ids
    are never reused, so tombstoned subtrees restore without clashes.
    """

    nodes: dict[int, AttributeNode] = field(default_factory=dict)
    children: dict[int, list[int]] = field(default_factory=dict)
    root_id: int = 0
    next_id: int = 0

    def has_node(self, node_id: int) -> bool:
        return node_id in self.nodes

    def node(self, node_id: int) -> AttributeNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise NotFoundError(f"unknown node {node_id}") from None

    def children_of(self, node_id: int) -> list[int]:
        self.node(node_id)
        return self.children.get(node_id, [])

    def is_primitive(self, node_id: int) -> bool:
        return not self.children_of(node_id)

    def parent_of(self, node_id: int) -> int | None:
        self.node(node_id)
        for parent, kids in self.children.items():
            if node_id in kids:
                return parent
        return None

    def preorder(self, start: int | None = None):
        """Yield node ids depth-first, children in declared order."""
        stack = [self.root_id if start is None else start]
        while stack:
            nid = stack.pop()
            yield nid
            stack.extend(reversed(self.children.get(nid, [])))

    def subtree_ids(self, node_id: int) -> list[int]:
        self.node(node_id)
        return list(self.preorder(node_id))

    def depth_of(self, node_id: int) -> int:
        depth = 0
        current = node_id
        while current != self.root_id:
            parent = self.parent_of(current)
            if parent is None:
                raise ValidationError(f"node {node_id} is not attached to the root")
            current = parent
            depth += 1
        return depth

    def path_names(self, node_id: int) -> list[str]:
        names = [self.node(node_id).name]
        current = node_id
        while current != self.root_id:
            current = self.parent_of(current)
            if current is None:
                break
            names.append(self.node(current).name)
        return list(reversed(names))

    def resolve_path(self, path: str) -> int:
        """Resolve 'root/Name/Child' to a node id; 'root' is the root node."""
        segments = [s for s in path.split("/") if s != ""]
        if not segments or segments[0] != "root":
            raise NotFoundError(f"node path must start with 'root': {path!r}")
        current = self.root_id
        for name in segments[1:]:
            for child in self.children_of(current):
                if self.nodes[child].name == name:
                    current = child
                    break
            else:
                raise NotFoundError(
                    f"no child named {name!r} under {self.nodes[current].name!r}"
                )
        return current

    def allocate_id(self) -> int:
        nid = self.next_id
        self.next_id += 1
        return nid


@dataclass
class SubtreeSnapshot:
    """Deep copy of a removed subtree, child order preserved."""

    node: AttributeNode
    children: list["SubtreeSnapshot"] = field(default_factory=list)

    def all_ids(self) -> list[int]:
        ids = [self.node.id]
        for child in self.children:
            ids.extend(child.all_ids())
        return ids


@dataclass
class Tombstone:
    """What a destructive step removed, so it can be put back.

    Node removal records the subtree plus where it hung; the sync that
    later archives the subtree's judgment cells (and drops its tables)
    appends those here too, so one tombstone carries the whole removal.
    Cell-only tombstones (no subtree) come from syncs that archive
    cells whose nodes have no tombstone of their own.
    """

    removed_at_version: int
    parent_id: int | None = None
    child_index: int | None = None
    subtree: SubtreeSnapshot | None = None
    cells: list[tuple[CellAddress, CellValue]] = field(default_factory=list)
    tables: list[ManagedTable] = field(default_factory=list)

    def covers_node(self, node_id: int) -> bool:
        return self.subtree is not None and node_id in self.subtree.all_ids()


@dataclass
class DecisionDocument:
    id: str
    goal: str
    scoring_goal: str
    alternatives: list[Alternative]
    tree: ValueTree
    grid: VirtualGrid = field(default_factory=VirtualGrid)
    registry: list[ManagedTable] = field(default_factory=list)
    tombstones: list[Tombstone] = field(default_factory=list)
    version: int = 0
    schema_version: int = SCHEMA_VERSION

    def bump_version(self) -> int:
        self.version += 1
        return self.version

    def alternative_labels(self) -> list[str]:
        return [alt.label for alt in self.alternatives]

    def live_alternatives(self) -> list[Alternative]:
        return [alt for alt in self.alternatives if alt.excluded is None]

    def find_alternative(self, label: str) -> Alternative:
        for alt in self.alternatives:
            if alt.label == label:
                return alt
        raise NotFoundError(f"unknown alternative {label!r}")

    def table_for(self, node_id: int) -> ManagedTable | None:
        for table in self.registry:
            if table.node_id == node_id:
                return table
        return None


def new_decision(
    goal: str,
    alternatives: list[str],
    attributes: list[str],
    scoring_goal: str = "",
    doc_id: str | None = None,
) -> DecisionDocument:
    """Set up a fresh decision: root node named after the scoring goal
    (falling back to the goal), one child per starting attribute."""
    if not goal.strip():
        raise ValidationError("goal must not be blank")
    if len(alternatives) < 2:
        raise ValidationError("a decision needs at least 2 alternatives")
    seen: set[str] = set()
    for label in alternatives:
        if not label.strip():
            raise ValidationError("alternative labels must not be blank")
        if label in seen:
            raise ValidationError(f"duplicate alternative: {label}")
        seen.add(label)
    seen_attrs: set[str] = set()
    for name in attributes:
        if not name.strip():
            raise ValidationError("attribute names must not be blank")
        if name in seen_attrs:
            raise ValidationError(f"duplicate attribute: {name}")
        seen_attrs.add(name)

    root_name = scoring_goal.strip() or goal.strip()
    tree = ValueTree()
    root_id = tree.allocate_id()
    tree.root_id = root_id
    tree.nodes[root_id] = AttributeNode(id=root_id, name=root_name)
    tree.children[root_id] = []
    for name in attributes:
        nid = tree.allocate_id()
        tree.nodes[nid] = AttributeNode(id=nid, name=name)
        tree.children[nid] = []
        tree.children[root_id].append(nid)

    return DecisionDocument(
        id=doc_id if doc_id is not None else uuid.uuid4().hex,
        goal=goal,
        scoring_goal=scoring_goal,
        alternatives=[Alternative(label, i) for i, label in enumerate(alternatives)],
        tree=tree,
    )


def validate(document: DecisionDocument, *, for_sync: bool = False) -> list[str]:
    """Collect invariant violations; empty list means the document is sound.

    ``for_sync=True`` skips the registry-vs-tree agreement checks, which
    are exactly the discrepancies a sync exists to repair (tables whose
    node was removed or became primitive, or whose columns drifted).
    """
    violations: list[str] = []
    seen_labels: set[str] = set()
    for i, alt in enumerate(document.alternatives):
        if not alt.label.strip():
            violations.append(f"alternative {i} has a blank label")
        if alt.label in seen_labels:
            violations.append(f"duplicate alternative: {alt.label}")
        seen_labels.add(alt.label)
        if alt.declaration_index != i:
            violations.append(
                f"alternative {alt.label!r} has declaration_index "
                f"{alt.declaration_index}, expected {i}"
            )

    tree = document.tree
    if tree.root_id not in tree.nodes:
        violations.append(f"root node {tree.root_id} missing from tree")
        return violations

    for nid, node in tree.nodes.items():
        if node.id != nid:
            violations.append(f"node keyed {nid} carries id {node.id}")
        if not node.name.strip():
            violations.append(f"node {nid} has a blank name")
        if node.importance not in IMPORTANCE_LEVELS:
            violations.append(
                f"node {nid} importance {node.importance} not one of "
                + ", ".join(f"x{m}" for m in IMPORTANCE_LEVELS)
            )
    for nid in tree.nodes:
        if nid not in tree.children:
            violations.append(f"node {nid} has no child list entry")
    for nid, kids in tree.children.items():
        if nid not in tree.nodes:
            violations.append(f"child list for unknown node {nid}")
        for cid in kids:
            if cid not in tree.nodes:
                violations.append(f"node {nid} lists unknown child {cid}")

    parent_count: dict[int, int] = {}
    for kids in tree.children.values():
        for cid in kids:
            parent_count[cid] = parent_count.get(cid, 0) + 1
    for cid, count in parent_count.items():
        if count > 1:
            violations.append(f"node {cid} appears in {count} child lists")
    if tree.root_id in parent_count:
        violations.append(f"root node {tree.root_id} appears as a child")

    reached: set[int] = set()
    stack = [tree.root_id]
    while stack:
        nid = stack.pop()
        if nid in reached:
            continue
        reached.add(nid)
        stack.extend(c for c in tree.children.get(nid, []) if c in tree.nodes)
    for nid in tree.nodes:
        if nid not in reached:
            violations.append(f"node {nid} unreachable from root")
    if tree.nodes and tree.next_id <= max(tree.nodes):
        violations.append(
            f"next_id {tree.next_id} would reuse an existing node id"
        )

    expected_rows = 1 + len(document.alternatives)
    by_node: dict[int, int] = {}
    for table in document.registry:
        by_node[table.node_id] = by_node.get(table.node_id, 0) + 1
        if table.n_rows != expected_rows:
            violations.append(
                f"managed table for node {table.node_id}: expected "
                f"{expected_rows} rows, found {table.n_rows}"
            )
        if table.n_cols != 1 + len(table.column_bindings):
            violations.append(
                f"managed table for node {table.node_id}: n_cols {table.n_cols} "
                f"does not match {len(table.column_bindings)} column bindings"
            )
        if not for_sync:
            if not tree.has_node(table.node_id):
                violations.append(
                    f"managed table references missing node {table.node_id}"
                )
            elif tree.is_primitive(table.node_id):
                violations.append(
                    f"managed table for node {table.node_id} targets a primitive node"
                )
            elif table.column_bindings != tree.children_of(table.node_id):
                violations.append(
                    f"managed table for node {table.node_id} is out of step "
                    "with the node's children (sync needed)"
                )
    for nid, count in by_node.items():
        if count > 1:
            violations.append(f"{count} managed tables for node {nid}")
    for i, first in enumerate(document.registry):
        for second in document.registry[i + 1 :]:
            if first.region().overlaps(second.region()):
                violations.append(
                    f"managed tables overlap: nodes {first.node_id} and {second.node_id}"
                )

    if document.version < 0:
        violations.append(f"negative document version {document.version}")
    return violations
