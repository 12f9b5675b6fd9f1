"""Rough scores over the value tree.

Scores are deliberately rough: normalized leaf judgments combined by an
importance-weighted mean, meant to provoke reaction rather than settle
the decision.  The redacted presentations (bands, bare ranking) exist
for the same reason; precise numbers are one view among three.

Missing judgments are skipped, not imputed: a parent's mean renormalizes
over whichever children have scores for that alternative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal

from .errors import ScoreError, ValidationError
from .materialize import judgment_for, require_synced
from .model import (
    DEFAULT_SCALE,
    LOWER_IS_BETTER,
    MARK,
    NUMERIC,
    DecisionDocument,
    Judgment,
    LeafScale,
    ValueTree,
)

MARK_CAP = 3

SOURCE_ROLLUP = "rollup"
SOURCE_LEAF = "leaf"
SOURCE_MANUAL = "manual_override"
SOURCE_MISSING = "missing"

BAND_LABELS = ("low", "mid", "high")


@dataclass(frozen=True)
class ScoreEntry:
    score: float | None
    source: str


@dataclass
class ScoreSheet:
    """Per-alternative scores of one node, in declaration order."""

    node_id: int
    entries: dict[str, ScoreEntry]
    diagnostics: list[str] = field(default_factory=list)

    def scores(self) -> dict[str, float]:
        return {label: e.score for label, e in self.entries.items() if e.score is not None}


def mark_score(count: int) -> float:
    """Marks saturate: one X is a third, three or more is full weight."""
    return min(count, MARK_CAP) / MARK_CAP


def leaf_score(judgment: Judgment, scale: LeafScale | None = None) -> float | None:
    """Normalize one judgment to [0, 1]; None when absent.

    Numbers map linearly onto the scale (reflected when lower is
    better); out-of-bounds values are an error, not a clamp, because a
    typo should surface rather than quietly pin to 0 or 1.
    """
    scale = scale or DEFAULT_SCALE
    if judgment.is_absent:
        return None
    if judgment.kind == MARK:
        return mark_score(judgment.count)
    value = judgment.number
    if not (scale.min <= value <= scale.max):
        raise ScoreError(
            f"judgment {value} outside scale [{scale.min}, {scale.max}]"
        )
    position = float((value - scale.min) / (scale.max - scale.min))
    if scale.direction == LOWER_IS_BETTER:
        return 1.0 - position
    return position


def _weight_of(tree: ValueTree, node_id: int, weights: dict[int, float] | None) -> float:
    if weights is not None and node_id in weights:
        w = weights[node_id]
        if not isinstance(w, (int, float)) or isinstance(w, bool) or w <= 0:
            raise ValidationError(f"weight override for node {node_id} must be positive")
        return float(w)
    return float(tree.nodes[node_id].importance)


def rollup(
    document: DecisionDocument,
    node_id: int | None = None,
    weights: dict[int, float] | None = None,
) -> ScoreSheet:
    """Score every alternative on a node (the root unless told otherwise).

    A judgment typed directly into the node's own column of its parent
    table wins over combining its children (source manual_override);
    numbers there are read on the default 0-10 scale.  Otherwise a
    non-primitive node scores as the importance-weighted mean of its
    scorable children, and a node with nothing scorable stays missing.
    ``weights`` substitutes importance multipliers for what-if probing
    without touching the document.
    """
    require_synced(document)
    tree = document.tree
    if node_id is None:
        node_id = tree.root_id
    tree.node(node_id)

    diagnostics: list[str] = []
    column_kinds: dict[int, set[str]] = {}
    memo: dict[tuple[int, int], tuple[float | None, str]] = {}

    def direct_judgment(nid: int, alt_index: int) -> Judgment:
        judgment, _addr, is_note = judgment_for(document, nid, alt_index)
        if is_note:
            diagnostics.append(
                f"note text in column {tree.nodes[nid].name!r} for "
                f"{document.alternatives[alt_index].label!r} treated as absent"
            )
        if not judgment.is_absent:
            column_kinds.setdefault(nid, set()).add(judgment.kind)
        return judgment

    def effective(nid: int, alt_index: int) -> tuple[float | None, str]:
        key = (nid, alt_index)
        if key in memo:
            return memo[key]
        node = tree.nodes[nid]
        judgment = (
            direct_judgment(nid, alt_index) if nid != tree.root_id else None
        )
        if tree.is_primitive(nid):
            score = None
            if judgment is not None and not judgment.is_absent:
                try:
                    score = leaf_score(judgment, node.leaf_scale)
                except ScoreError as exc:
                    raise ScoreError(
                        f"{node.name!r} / {document.alternatives[alt_index].label!r}: {exc}"
                    ) from None
            result = (score, SOURCE_LEAF if score is not None else SOURCE_MISSING)
        elif judgment is not None and not judgment.is_absent:
            if judgment.kind == NUMERIC:
                if not (Decimal(0) <= judgment.number <= Decimal(10)):
                    raise ScoreError(
                        f"manual override {judgment.number} for {node.name!r} / "
                        f"{document.alternatives[alt_index].label!r} outside [0, 10]"
                    )
                result = (float(judgment.number) / 10.0, SOURCE_MANUAL)
            else:
                result = (mark_score(judgment.count), SOURCE_MANUAL)
        else:
            total = 0.0
            weight_sum = 0.0
            for child in tree.children_of(nid):
                child_score, _src = effective(child, alt_index)
                if child_score is None:
                    continue
                w = _weight_of(tree, child, weights)
                total += w * child_score
                weight_sum += w
            if weight_sum == 0.0:
                result = (None, SOURCE_MISSING)
            else:
                result = (total / weight_sum, SOURCE_ROLLUP)
        memo[key] = result
        return result

    entries: dict[str, ScoreEntry] = {}
    for alt in document.alternatives:
        score, source = effective(node_id, alt.declaration_index)
        entries[alt.label] = ScoreEntry(score=score, source=source)

    for nid, kinds in sorted(column_kinds.items()):
        if NUMERIC in kinds and MARK in kinds:
            parent = tree.parent_of(nid)
            diagnostics.append(
                f"column {tree.nodes[nid].name!r} of table "
                f"{tree.nodes[parent].name!r} mixes numbers and marks"
            )
    return ScoreSheet(node_id=node_id, entries=entries, diagnostics=diagnostics)


def effective_leaf_weights(
    document_or_tree, weights: dict[int, float] | None = None
) -> dict[int, float]:
    """Share of the final score each primitive attribute commands.

    Multiplying sibling shares down every path gives, per leaf, the
    product of (multiplier / sibling multiplier sum); with every leaf
    judged, the root score equals the weight-weighted sum of leaf
    scores, and the weights sum to 1.
    """
    tree = document_or_tree.tree if isinstance(document_or_tree, DecisionDocument) else document_or_tree
    shares: dict[int, float] = {}

    def walk(nid: int, acc: float) -> None:
        kids = tree.children_of(nid)
        if not kids:
            shares[nid] = acc
            return
        total = sum(_weight_of(tree, c, weights) for c in kids)
        for child in kids:
            walk(child, acc * (_weight_of(tree, child, weights) / total))

    walk(tree.root_id, 1.0)
    return shares


def rank(
    document: DecisionDocument, weights: dict[int, float] | None = None
) -> list[tuple[str, float | None]]:
    """Live alternatives best first; unjudged ones trail with None.

    Ties break by declaration order, so ranking is deterministic and
    stable across repeated scoring runs.
    """
    sheet = rollup(document, weights=weights)
    live = document.live_alternatives()
    scored = [
        (alt.label, sheet.entries[alt.label].score, alt.declaration_index)
        for alt in live
        if sheet.entries[alt.label].score is not None
    ]
    if not scored:
        raise ScoreError("no live alternative has a score yet; enter judgments first")
    scored.sort(key=lambda item: (-item[1], item[2]))
    missing = [alt.label for alt in live if sheet.entries[alt.label].score is None]
    return [(label, score) for label, score, _ in scored] + [
        (label, None) for label in missing
    ]


def fuzzy_band(score: float, n_bands: int = 3) -> int:
    """Coarsen a [0, 1] score into one of n_bands equal bins, top-inclusive."""
    if not isinstance(n_bands, int) or n_bands < 1:
        raise ValidationError(f"n_bands must be a positive integer, got {n_bands!r}")
    if not (0.0 <= score <= 1.0):
        raise ValidationError(f"score {score} outside [0, 1]")
    return min(math.floor(score * n_bands), n_bands - 1)


def band_label(score: float) -> str:
    return BAND_LABELS[fuzzy_band(score, len(BAND_LABELS))]
