#!/usr/bin/env python3
"""Walk the remote-workday decision end to end and print each stage.

Builds the bundled fixture, materializes its table, decomposes one
attribute (as a user clicking two suggestions would), enters judgments,
and prints the grid, scores, and the shareable report.  Everything is
deterministic; run it after changes to eyeball the whole pipeline.
"""

from __future__ import annotations

import argparse
import sys

from decisiongrid import ops
from decisiongrid.fixtures import remote_workday_decision
from decisiongrid.grid import CellAddress, cell_display, number_cell
from decisiongrid.materialize import sync
from decisiongrid.persistence import export_report, save_file
from decisiongrid.scoring import rollup
from decisiongrid.suggest import reflection_prompt, suggest_subattributes


def render_grid(document) -> str:
    used = document.grid.used_range()
    if used is None:
        return "(empty grid)"
    widths = {}
    for col in range(used.left, used.right + 1):
        widths[col] = max(
            [len(cell_display(document.grid.get_cell(CellAddress(r, col))))
             for r in range(used.top, used.bottom + 1)] + [1]
        )
    lines = []
    for row in range(used.top, used.bottom + 1):
        cells = [
            cell_display(document.grid.get_cell(CellAddress(row, col))).ljust(widths[col])
            for col in range(used.left, used.right + 1)
        ]
        lines.append("| " + " | ".join(cells).rstrip() )
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--save", metavar="FILE", help="also write the final document here")
    args = parser.parse_args(argv)

    doc = remote_workday_decision()
    print(f"goal: {doc.goal}")
    print(f"scoring goal: {doc.scoring_goal}\n")

    sync(doc)
    print("after first sync:")
    print(render_grid(doc), "\n")

    productivity = doc.tree.resolve_path("root/Productivity impact")
    print("suggestions for 'Productivity impact':")
    for candidate in suggest_subattributes(doc, productivity):
        print(f"  - {candidate}")
    ops.add_child(doc, productivity, "disruption to weekly rhythm")
    ops.add_child(doc, productivity, "team collaboration")
    ops.set_importance(doc, productivity, 4)
    sync(doc)
    print("\nafter decomposing it (importance x4) and syncing again:")
    print(render_grid(doc), "\n")
    print("note prompt now reads:")
    print(f"  {reflection_prompt(doc, productivity)}\n")

    # Judgments on the default 0-10 scale, one column at a time.
    judgments = {
        "Business needs on specific days": [6, 7, 5, 8, 4],
        "Employee preferences": [7, 5, 6, 6, 9],
        "Collaboration and communication needs": [5, 8, 7, 6, 3],
        "Workload distribution": [6, 6, 7, 5, 6],
        "disruption to weekly rhythm": [4, 6, 7, 6, 3],
        "team collaboration": [5, 7, 8, 6, 4],
    }
    for table in doc.registry:
        for j, child in enumerate(table.column_bindings):
            name = doc.tree.nodes[child].name
            if name not in judgments:
                continue
            for i, value in enumerate(judgments[name]):
                ops.set_cell(doc, table.data_address(i, j), number_cell(value))

    sheet = rollup(doc)
    print("scores:")
    for label, entry in sheet.entries.items():
        print(f"  {label}: {entry.score:.3f} ({entry.source})")

    print("\nshareable report (bands):\n")
    print(export_report(doc, "bands"))

    if args.save:
        save_file(doc, args.save)
        print(f"saved to {args.save}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
