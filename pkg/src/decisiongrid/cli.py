"""Command line front end.

Layout: one subcommand per document operation, with the document file
as a positional argument.  Mutating commands hold the sidecar file lock
across read-modify-write, so concurrent invocations (or a service on
the same file) serialize instead of clobbering each other.

Exit codes: 0 success, 1 domain error (bad state, unknown node, parse
failure), 2 usage error from argument parsing.
"""

from __future__ import annotations

import argparse
import sys

from .errors import DecisionError
from .grid import CellAddress, parse_cell_text
from . import ops
from .materialize import sync
from .model import IMPORTANCE_LEVELS, new_decision
from .persistence import (
    atomic_write,
    export_report,
    export_tables_csv,
    file_lock,
    load_file,
    save,
    save_file,
)
from .scoring import band_label, rank
from .suggest import (
    RemoteCompletionProvider,
    StaticCorpusProvider,
    reflection_prompt,
    suggest_subattributes,
)


def _with_document(path: str, fn):
    """Read-modify-write one document under its file lock."""
    with file_lock(path):
        document = load_file(path)
        out = fn(document)
        atomic_write(path, save(document))
    return out


def _parse_importance(raw: str) -> int:
    text = raw.strip().lower()
    if text.startswith("x"):
        text = text[1:]
    try:
        level = int(text)
    except ValueError:
        level = -1
    if level not in IMPORTANCE_LEVELS:
        raise DecisionError(
            f"importance must be one of {', '.join('x%d' % m for m in IMPORTANCE_LEVELS)}, got {raw!r}"
        )
    return level


def _cmd_init(args) -> int:
    document = new_decision(
        goal=args.goal,
        alternatives=args.alt,
        attributes=args.attr or [],
        scoring_goal=args.scoring_goal or "",
    )
    save_file(document, args.file)
    print(
        f"created {args.file}: {len(document.alternatives)} alternatives, "
        f"{len(document.tree.nodes) - 1} starting attributes"
    )
    return 0


def _cmd_tree_add(args) -> int:
    def run(document):
        parent = document.tree.resolve_path(args.parent)
        nid = ops.add_child(document, parent, args.name)
        return nid, document.version

    nid, version = _with_document(args.file, run)
    print(f"added {args.name!r} (node {nid}) under {args.parent!r}; version {version}")
    return 0


def _cmd_tree_rm(args) -> int:
    def run(document):
        nid = document.tree.resolve_path(args.node)
        ops.remove_node(document, nid)
        return nid, document.version

    nid, version = _with_document(args.file, run)
    print(f"removed node {nid} ({args.node!r}); its table is archived on next sync; version {version}")
    return 0


def _cmd_tree_rename(args) -> int:
    def run(document):
        nid = document.tree.resolve_path(args.node)
        ops.rename_node(document, nid, args.name)
        return document.version

    version = _with_document(args.file, run)
    print(f"renamed {args.node!r} to {args.name!r}; version {version}")
    return 0


def _cmd_tree_importance(args) -> int:
    level = _parse_importance(args.level)

    def run(document):
        nid = document.tree.resolve_path(args.node)
        ops.set_importance(document, nid, level)
        return document.version

    version = _with_document(args.file, run)
    print(f"set importance of {args.node!r} to x{level}; version {version}")
    return 0


def _cmd_tree_note(args) -> int:
    if args.text is None:
        document = load_file(args.file)
        nid = document.tree.resolve_path(args.node)
        note = document.tree.nodes[nid].note
        print(reflection_prompt(document, nid))
        print(note if note else "(no note yet)")
        return 0

    def run(document):
        nid = document.tree.resolve_path(args.node)
        ops.set_note(document, nid, args.text)
        return document.version

    version = _with_document(args.file, run)
    print(f"noted {args.node!r}; version {version}")
    return 0


def _cmd_alt_exclude(args) -> int:
    def run(document):
        ops.exclude_alternative(document, args.label, args.rationale or "")
        return document.version

    version = _with_document(args.file, run)
    print(f"excluded {args.label!r}; version {version}")
    return 0


def _cmd_alt_include(args) -> int:
    def run(document):
        ops.include_alternative(document, args.label)
        return document.version

    version = _with_document(args.file, run)
    print(f"included {args.label!r} again; version {version}")
    return 0


def _cmd_cell_set(args) -> int:
    value = parse_cell_text(args.value)

    def run(document):
        ops.set_cell(document, CellAddress(args.row, args.col), value)
        return document.version

    version = _with_document(args.file, run)
    what = "cleared" if value is None else "set"
    print(f"{what} cell ({args.row}, {args.col}); version {version}")
    return 0


def _cmd_sync(args) -> int:
    def run(document):
        report = sync(document)
        return report, document.version

    report, version = _with_document(args.file, run)
    print(f"{report.summary()}; version {version}")
    for src, dst in report.cells_moved:
        print(f"  moved cell ({src.row}, {src.col}) -> ({dst.row}, {dst.col})")
    return 0


def _cmd_score(args) -> int:
    document = load_file(args.file)
    ranking = rank(document)
    if args.redaction == "full":
        position = 0
        for label, score in ranking:
            if score is None:
                print(f"   {label}: no judgments yet")
            else:
                position += 1
                print(f"{position:>2}. {label}: {score:.3f}")
    elif args.redaction == "bands":
        for label, score in ranking:
            print(f"{label}: {'not yet judged' if score is None else band_label(score)}")
    else:
        for label, score in ranking:
            print(label if score is not None else f"{label} (not yet judged)")
    print(f"recommendation: {ranking[0][0]}")
    return 0


def _cmd_suggest(args) -> int:
    document = load_file(args.file)
    nid = document.tree.resolve_path(args.node)
    if args.endpoint:
        provider = RemoteCompletionProvider(args.endpoint, timeout=args.timeout)
    else:
        provider = StaticCorpusProvider(args.corpus)
    for candidate in suggest_subattributes(document, nid, k=args.k, provider=provider):
        print(candidate)
    return 0


def _cmd_report(args) -> int:
    document = load_file(args.file)
    print(export_report(document, args.redaction), end="")
    return 0


def _cmd_export(args) -> int:
    document = load_file(args.file)
    tables = export_tables_csv(document)
    if args.node:
        nid = document.tree.resolve_path(args.node)
        if nid not in tables:
            raise DecisionError(f"no table for {args.node!r} (is it primitive?)")
        tables = {nid: tables[nid]}
    if args.out_dir:
        import os

        os.makedirs(args.out_dir, exist_ok=True)
        for nid, text in tables.items():
            name = document.tree.nodes[nid].name.replace("/", "_")
            target = os.path.join(args.out_dir, f"{nid}-{name}.csv")
            with open(target, "w", newline="") as fh:
                fh.write(text)
            print(f"wrote {target}")
    else:
        for nid, text in tables.items():
            print(text, end="")
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    serve(
        args.storage,
        host=args.host,
        port=args.port,
        corpus_path=args.corpus,
        suggest_endpoint=args.endpoint,
        suggest_timeout=args.timeout,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decisiongrid",
        description="Decisions as value trees over spreadsheet tables: "
        "decompose attributes, judge alternatives in cells, get rough scores back.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="start a new decision file")
    p.add_argument("file")
    p.add_argument("--goal", required=True)
    p.add_argument("--alt", action="append", required=True, help="alternative label (repeat)")
    p.add_argument("--attr", action="append", help="starting attribute (repeat)")
    p.add_argument("--scoring-goal", default="")
    p.set_defaults(handler=_cmd_init)

    tree = sub.add_parser("tree", help="edit the value tree")
    tree_sub = tree.add_subparsers(dest="tree_command", required=True)

    p = tree_sub.add_parser("add", help="add a sub-attribute")
    p.add_argument("file")
    p.add_argument("--parent", required=True, help="node path like root/Productivity impact")
    p.add_argument("--name", required=True)
    p.set_defaults(handler=_cmd_tree_add)

    p = tree_sub.add_parser("rm", help="remove a subtree (tombstoned, restorable)")
    p.add_argument("file")
    p.add_argument("--node", required=True)
    p.set_defaults(handler=_cmd_tree_rm)

    p = tree_sub.add_parser("rename", help="rename an attribute")
    p.add_argument("file")
    p.add_argument("--node", required=True)
    p.add_argument("--name", required=True)
    p.set_defaults(handler=_cmd_tree_rename)

    p = tree_sub.add_parser("importance", help="set the importance multiplier")
    p.add_argument("file")
    p.add_argument("--node", required=True)
    p.add_argument("--level", required=True, help="x1, x2, x4 or x10")
    p.set_defaults(handler=_cmd_tree_importance)

    p = tree_sub.add_parser("note", help="read or write an attribute note")
    p.add_argument("file")
    p.add_argument("--node", required=True)
    p.add_argument("--text", help="omit to show the note and its reflection prompt")
    p.set_defaults(handler=_cmd_tree_note)

    alt = sub.add_parser("alt", help="manage alternatives")
    alt_sub = alt.add_subparsers(dest="alt_command", required=True)

    p = alt_sub.add_parser("exclude", help="take an alternative out of the running")
    p.add_argument("file")
    p.add_argument("--label", required=True)
    p.add_argument("--rationale", default="")
    p.set_defaults(handler=_cmd_alt_exclude)

    p = alt_sub.add_parser("include", help="bring an excluded alternative back")
    p.add_argument("file")
    p.add_argument("--label", required=True)
    p.set_defaults(handler=_cmd_alt_include)

    cell = sub.add_parser("cell", help="edit grid cells")
    cell_sub = cell.add_subparsers(dest="cell_command", required=True)

    p = cell_sub.add_parser("set", help="type into a cell (blank clears, X marks tally)")
    p.add_argument("file")
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--col", type=int, required=True)
    p.add_argument("--value", required=True)
    p.set_defaults(handler=_cmd_cell_set)

    p = sub.add_parser("sync", help="bring tables in step with the tree")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_sync)

    p = sub.add_parser("score", help="rank alternatives")
    p.add_argument("file")
    p.add_argument("--redaction", choices=["full", "bands", "ranks"], default="full")
    p.set_defaults(handler=_cmd_score)

    p = sub.add_parser("suggest", help="suggest sub-attributes for a node")
    p.add_argument("file")
    p.add_argument("--node", required=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--corpus", help="alternative suggestion corpus file")
    p.add_argument("--endpoint", help="remote completion endpoint (POST)")
    p.add_argument("--timeout", type=float, default=10.0)
    p.set_defaults(handler=_cmd_suggest)

    p = sub.add_parser("report", help="print a shareable summary")
    p.add_argument("file")
    p.add_argument("--redaction", choices=["full", "bands", "ranks"], default="full")
    p.set_defaults(handler=_cmd_report)

    p = sub.add_parser("export", help="write managed tables as CSV")
    p.add_argument("file")
    p.add_argument("--node", help="only this node's table")
    p.add_argument("--out-dir", help="write files here instead of stdout")
    p.set_defaults(handler=_cmd_export)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--storage", required=True, help="directory of .decision.json files")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--corpus")
    p.add_argument("--endpoint")
    p.add_argument("--timeout", type=float, default=10.0)
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
