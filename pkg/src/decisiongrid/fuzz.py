"""Deterministic random documents and edit sessions.

Everything here is driven by a caller-supplied random.Random, so a
seed pins the whole run.  Names and labels are letters-only on purpose:
generated documents end up inside redacted reports, which must stay
free of anything that looks like a numeric score.
"""

from __future__ import annotations

import random
from decimal import Decimal

from . import ops
from .grid import CellAddress, CellValue, mark_cell, number_cell, text_cell
from .model import (
    DEFAULT_SCALE,
    HIGHER_IS_BETTER,
    IMPORTANCE_LEVELS,
    LOWER_IS_BETTER,
    DecisionDocument,
    LeafScale,
    new_decision,
)

ADJECTIVES = [
    "brisk", "calm", "deep", "eager", "fond", "grand", "keen", "light",
    "mellow", "noble", "plain", "quick", "round", "sharp", "tidy", "vivid",
    "warm", "young", "bold", "clear",
]
NOUNS = [
    "heron", "maple", "quartz", "breeze", "harbor", "meadow", "lantern",
    "pebble", "spruce", "violet", "walnut", "yarrow", "amber", "basil",
    "cedar", "dahlia", "ember", "fennel", "ginger", "hazel",
]
GREEK = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "iota", "kappa", "lambda", "mu",
]
SCALES = [
    (Decimal(0), Decimal(10)),
    (Decimal(0), Decimal(100)),
    (Decimal(1), Decimal(5)),
    (Decimal(-5), Decimal(5)),
    (Decimal(0), Decimal(1)),
]


def fresh_name(rng: random.Random, taken: set[str]) -> str:
    while True:
        name = f"{rng.choice(ADJECTIVES)} {rng.choice(NOUNS)}"
        if name not in taken:
            taken.add(name)
            return name
        name = f"{name} {rng.choice(GREEK)}"
        if name not in taken:
            taken.add(name)
            return name


def _taken_names(document: DecisionDocument) -> set[str]:
    return {node.name for node in document.tree.nodes.values()}


def random_document(rng: random.Random, n_alts: int | None = None, n_attrs: int | None = None) -> DecisionDocument:
    """Flat starting decision with letters-only labels and names."""
    taken: set[str] = set()
    n_alts = n_alts if n_alts is not None else rng.randint(2, 6)
    n_attrs = n_attrs if n_attrs is not None else rng.randint(1, 4)
    labels = [f"option {g}" for g in rng.sample(GREEK, n_alts)]
    attrs = [fresh_name(rng, taken) for _ in range(n_attrs)]
    goal = f"choose the best {rng.choice(NOUNS)}"
    return new_decision(goal, labels, attrs, f"Scoring each {rng.choice(NOUNS)}")


def grow_random_tree(
    rng: random.Random,
    document: DecisionDocument,
    max_nodes: int = 40,
    max_depth: int = 5,
) -> None:
    """Randomly decompose attributes until the size budget runs out."""
    taken = _taken_names(document)
    lo = len(document.tree.nodes)
    target = rng.randint(lo, max(lo, max_nodes))
    while len(document.tree.nodes) < target:
        candidates = [
            nid
            for nid in document.tree.nodes
            if document.tree.depth_of(nid) < max_depth
        ]
        ops.add_child(document, rng.choice(candidates), fresh_name(rng, taken))


def assign_random_scales(rng: random.Random, document: DecisionDocument, p: float = 0.5) -> None:
    for nid in document.tree.nodes:
        if document.tree.is_primitive(nid) and rng.random() < p:
            lo, hi = rng.choice(SCALES)
            direction = LOWER_IS_BETTER if rng.random() < 0.3 else HIGHER_IS_BETTER
            document.tree.nodes[nid].leaf_scale = LeafScale(lo, hi, direction)


def assign_random_importance(rng: random.Random, document: DecisionDocument, p: float = 0.6) -> None:
    for nid in document.tree.nodes:
        if nid != document.tree.root_id and rng.random() < p:
            document.tree.nodes[nid].importance = rng.choice(IMPORTANCE_LEVELS)


def scaled_value(rng: random.Random, scale: LeafScale | None) -> Decimal:
    """A random in-bounds judgment on a 1/20 grid of the scale."""
    scale = scale or DEFAULT_SCALE
    step = Decimal(rng.randint(0, 20))
    return scale.min + (scale.max - scale.min) * step / Decimal(20)


def fill_judgments(
    rng: random.Random,
    document: DecisionDocument,
    density: float = 1.0,
    allow_marks: bool = True,
) -> int:
    """Write judgments for primitive columns of every current table.

    Density below 1 leaves holes, but alternative 0 is always fully
    judged so the document stays rankable.  Non-primitive columns are
    left alone: no manual overrides come out of here.
    """
    written = 0
    for table in document.registry:
        if table.column_bindings != document.tree.children_of(table.node_id):
            continue
        for j, child_id in enumerate(table.column_bindings):
            if not document.tree.is_primitive(child_id):
                continue
            node = document.tree.nodes[child_id]
            for i in range(len(document.alternatives)):
                if i != 0 and rng.random() > density:
                    continue
                if allow_marks and rng.random() < 0.25:
                    value = mark_cell(rng.randint(1, 4))
                else:
                    value = number_cell(scaled_value(rng, node.leaf_scale))
                ops.set_cell(document, table.data_address(i, j), value)
                written += 1
    return written


def random_scored_document(
    rng: random.Random,
    max_nodes: int = 25,
    max_depth: int = 5,
    density: float = 1.0,
    allow_marks: bool = True,
    with_exclusions: bool = False,
) -> DecisionDocument:
    """Synced document with judgments in place, ready to score."""
    from .materialize import sync

    document = random_document(rng)
    grow_random_tree(rng, document, max_nodes=max_nodes, max_depth=max_depth)
    assign_random_scales(rng, document)
    assign_random_importance(rng, document)
    sync(document)
    fill_judgments(rng, document, density=density, allow_marks=allow_marks)
    if with_exclusions and len(document.live_alternatives()) >= 3 and rng.random() < 0.5:
        victim = rng.choice(document.alternatives).label
        ops.exclude_alternative(document, victim, f"too much {rng.choice(NOUNS)}")
    return document


def _random_cell_value(rng: random.Random) -> CellValue:
    roll = rng.random()
    if roll < 0.5:
        return number_cell(scaled_value(rng, None))
    if roll < 0.75:
        return mark_cell(rng.randint(1, 4))
    return text_cell(f"{rng.choice(ADJECTIVES)} note")


def apply_random_edit(
    rng: random.Random,
    document: DecisionDocument,
    max_depth: int = 5,
    max_children: int | None = None,
) -> dict:
    """Apply one legal random edit; the returned record says what happened.

    Record kinds: add_child, remove_node, rename_node, set_importance,
    set_note, exclude, include, judgment, user_cell, noop.  max_depth
    and max_children only constrain where new nodes may go.
    """
    tree = document.tree
    moves = ["add_child", "set_importance", "rename_node", "set_note", "judgment", "user_cell"]
    non_root = [nid for nid in tree.nodes if nid != tree.root_id]
    if non_root:
        moves.extend(["remove_node", "remove_node"])
    if len(document.live_alternatives()) > 2:
        moves.append("exclude")
    if any(alt.excluded is not None for alt in document.alternatives):
        moves.append("include")
    moves.extend(["add_child", "judgment"])

    move = rng.choice(moves)
    taken = _taken_names(document)

    if move == "add_child":
        shallow = [
            nid
            for nid in tree.nodes
            if tree.depth_of(nid) < max_depth
            and (max_children is None or len(tree.children_of(nid)) < max_children)
        ]
        if not shallow:
            return {"op": "noop"}
        parent = rng.choice(shallow)
        name = fresh_name(rng, taken)
        nid = ops.add_child(document, parent, name)
        return {"op": "add_child", "parent_id": parent, "node_id": nid, "name": name}
    if move == "remove_node":
        nid = rng.choice(non_root)
        subtree = tree.subtree_ids(nid)
        ops.remove_node(document, nid)
        return {"op": "remove_node", "node_id": nid, "subtree_ids": subtree}
    if move == "rename_node":
        nid = rng.choice(list(tree.nodes))
        name = fresh_name(rng, taken)
        ops.rename_node(document, nid, name)
        return {"op": "rename_node", "node_id": nid, "name": name}
    if move == "set_importance":
        nid = rng.choice(list(tree.nodes))
        level = rng.choice(IMPORTANCE_LEVELS)
        ops.set_importance(document, nid, level)
        return {"op": "set_importance", "node_id": nid, "level": level}
    if move == "set_note":
        nid = rng.choice(list(tree.nodes))
        ops.set_note(document, nid, f"{rng.choice(ADJECTIVES)} thought")
        return {"op": "set_note", "node_id": nid}
    if move == "exclude":
        label = rng.choice([a.label for a in document.live_alternatives()])
        ops.exclude_alternative(document, label, f"weak {rng.choice(NOUNS)}")
        return {"op": "exclude", "label": label}
    if move == "include":
        label = rng.choice(
            [a.label for a in document.alternatives if a.excluded is not None]
        )
        ops.include_alternative(document, label)
        return {"op": "include", "label": label}
    if move == "judgment":
        current = [
            t
            for t in document.registry
            if tree.has_node(t.node_id)
            and not tree.is_primitive(t.node_id)
            and t.column_bindings == tree.children_of(t.node_id)
            and t.column_bindings
        ]
        if not current:
            return {"op": "noop"}
        table = rng.choice(current)
        j = rng.randrange(len(table.column_bindings))
        i = rng.randrange(len(document.alternatives))
        addr = table.data_address(i, j)
        value = _random_cell_value(rng)
        ops.set_cell(document, addr, value)
        return {
            "op": "judgment",
            "parent_id": table.node_id,
            "child_id": table.column_bindings[j],
            "alt_index": i,
            "addr": addr,
            "value": value,
        }
    # user cell: anywhere outside managed regions
    regions = [t.region() for t in document.registry]
    used = document.grid.used_range()
    max_row = (used.bottom if used else 0) + 6
    for _ in range(20):
        addr = CellAddress(rng.randint(0, max_row), rng.randint(0, 14))
        if any(region.contains(addr) for region in regions):
            continue
        value = _random_cell_value(rng)
        ops.set_cell(document, addr, value)
        return {"op": "user_cell", "addr": addr, "value": value}
    return {"op": "noop"}
