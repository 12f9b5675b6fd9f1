#!/usr/bin/env python3
"""Hammer the table materializer with random edit/sync sessions.

Each session grows, prunes, and annotates a random document while
syncing at random points, then checks the invariants that matter:
structural validity, disjoint managed regions, registry matching the
non-primitive node set, and an idempotent final sync.  Failures dump
the seed so the session can be replayed under a debugger.
"""

from __future__ import annotations

import argparse
import copy
import random
import sys
import time

from decisiongrid import fuzz
from decisiongrid.materialize import sync
from decisiongrid.model import validate


def check(document, seed: int) -> None:
    problems = validate(document)
    assert not problems, f"seed {seed}: {problems}"
    regions = [t.region() for t in document.registry]
    for i, first in enumerate(regions):
        for second in regions[i + 1:]:
            assert not first.overlaps(second), f"seed {seed}: regions overlap"
    non_primitive = {n for n in document.tree.nodes if document.tree.children_of(n)}
    assert {t.node_id for t in document.registry} == non_primitive, (
        f"seed {seed}: registry out of step with the tree"
    )


def run_session(seed: int, edits: int, max_depth: int, max_children: int) -> dict:
    rng = random.Random(seed)
    doc = fuzz.random_document(rng, n_alts=rng.randint(2, 8))
    counts = {"edits": 0, "syncs": 0}
    for _ in range(edits):
        fuzz.apply_random_edit(rng, doc, max_depth=max_depth, max_children=max_children)
        counts["edits"] += 1
        if rng.random() < 0.25:
            sync(doc)
            counts["syncs"] += 1
            check(doc, seed)
    sync(doc)
    check(doc, seed)

    cells = dict(doc.grid.cells)
    registry = copy.deepcopy(doc.registry)
    report = sync(doc)
    assert report.is_empty(), f"seed {seed}: final sync was not idempotent"
    assert doc.grid.cells == cells, f"seed {seed}: idempotent sync changed cells"
    assert doc.registry == registry, f"seed {seed}: idempotent sync moved tables"

    counts["nodes"] = len(doc.tree.nodes)
    counts["tables"] = len(doc.registry)
    counts["cells"] = len(doc.grid.cells)
    return counts


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sessions", type=int, default=2000)
    parser.add_argument("--edits", type=int, default=25, help="edits per session")
    parser.add_argument("--seed-base", type=int, default=0)
    parser.add_argument("--max-depth", type=int, default=4)
    parser.add_argument("--max-children", type=int, default=4)
    args = parser.parse_args(argv)

    t0 = time.perf_counter()
    totals = {"edits": 0, "syncs": 0, "nodes": 0, "tables": 0, "cells": 0}
    for i in range(args.sessions):
        seed = args.seed_base + i
        counts = run_session(seed, args.edits, args.max_depth, args.max_children)
        for key in totals:
            totals[key] += counts[key]
        if (i + 1) % 500 == 0:
            print(f"  {i + 1} sessions ok")
    elapsed = time.perf_counter() - t0
    print(
        f"{args.sessions} sessions in {elapsed:.1f}s: "
        f"{totals['edits']} edits, {totals['syncs']} mid-session syncs, "
        f"avg {totals['nodes'] / args.sessions:.1f} nodes / "
        f"{totals['tables'] / args.sessions:.1f} tables / "
        f"{totals['cells'] / args.sessions:.1f} cells per document"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
