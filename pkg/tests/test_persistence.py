"""Canonical JSON persistence, CSV export, and redacted reports."""

from __future__ import annotations

import copy
import fcntl
import json
import os
import random
import re
import threading

import pytest

from decisiongrid import fuzz, ops
from decisiongrid.errors import (
    ParseError,
    SchemaVersionError,
    SyncRequiredError,
    ValidationError,
)
from decisiongrid.grid import CellAddress, mark_cell, number_cell, text_cell
from decisiongrid.materialize import sync
from decisiongrid.model import new_decision
from decisiongrid.persistence import (
    atomic_write,
    document_from_dict,
    document_to_dict,
    export_report,
    export_tables_csv,
    file_lock,
    load,
    load_file,
    save,
    save_file,
)

SCORE_PATTERN = re.compile(r"\d+\.\d+")


def worked_doc():
    doc = new_decision("pick", ["M", "T"], ["A", "B"], "Scoring picks", doc_id="persist1")
    ops.set_importance(doc, 1, 2)
    sync(doc)
    table = doc.table_for(0)
    ops.set_cells(
        doc,
        [
            (table.data_address(0, 0), number_cell(8)),
            (table.data_address(0, 1), number_cell(2)),
            (table.data_address(1, 0), number_cell(4)),
            (table.data_address(1, 1), number_cell(10)),
        ],
    )
    return doc


# ---------------------------------------------------------------- canonical JSON


def test_round_trip_preserves_the_document():
    doc = worked_doc()
    blob = save(doc)
    back = load(blob)
    assert back.id == doc.id
    assert back.version == doc.version
    assert back.tree.nodes == doc.tree.nodes
    assert back.tree.children == doc.tree.children
    assert back.grid.cells == doc.grid.cells
    assert back.registry == doc.registry
    assert save(back) == blob


def test_saving_twice_gives_identical_bytes():
    doc = worked_doc()
    assert save(doc) == save(doc)
    assert save(copy.deepcopy(doc)) == save(doc)


def test_random_documents_survive_the_round_trip():
    for seed in range(40):
        rng = random.Random(1000 + seed)
        doc = fuzz.random_scored_document(rng)
        # Stir in history: an edit, a removal, another sync.
        fuzz.apply_random_edit(rng, doc)
        removable = [
            nid for nid in doc.tree.preorder() if nid != doc.tree.root_id
        ]
        if removable:
            ops.remove_node(doc, rng.choice(removable))
        sync(doc)
        blob = save(doc)
        again = load(blob)
        assert save(again) == blob, f"seed {seed} round trip drifted"


def test_decimals_store_as_plain_strings():
    doc = new_decision("d", ["A", "B"], ["x"], doc_id="dec1")
    sync(doc)
    table = doc.table_for(0)
    ops.set_cell(doc, table.data_address(0, 0), number_cell("0.50"))
    ops.set_cell(doc, table.data_address(1, 0), number_cell("7e2"))
    raw = json.loads(save(doc).decode("utf-8"))
    stored = {key: cell["value"] for key, cell in raw["grid"]["cells"].items() if cell["kind"] == "number"}
    assert "0.5" in stored.values()
    assert "700" in stored.values()
    assert not any("e" in v or "E" in v for v in stored.values())
    back = load(save(doc))
    assert back.grid.get_cell(table.data_address(0, 0)).number == doc.grid.get_cell(
        table.data_address(0, 0)
    ).number


def test_canonical_form_is_sorted_and_compact():
    blob = save(worked_doc())
    text = blob.decode("utf-8")
    assert '"schema_version":1' in text
    assert ": " not in text.replace('": "', "")  # no pretty-print separators
    raw = json.loads(text)
    assert list(raw.keys()) == sorted(raw.keys())


def test_non_ascii_text_is_stored_as_utf8_not_escapes():
    doc = new_decision("café ou thé", ["été", "hiver"], ["prix"], doc_id="utf1")
    blob = save(doc)
    assert "café".encode("utf-8") in blob
    assert b"\\u" not in blob
    assert load(blob).goal == "café ou thé"


def test_save_refuses_a_broken_document():
    doc = worked_doc()
    doc.alternatives[1].label = doc.alternatives[0].label
    with pytest.raises(ValidationError, match="refusing to save"):
        save(doc)


def test_tombstones_with_archived_tables_round_trip():
    doc = new_decision("t", ["A", "B"], ["p", "q"], doc_id="tomb1")
    pid = doc.tree.resolve_path("root/p")
    ops.add_child(doc, pid, "leaf")
    sync(doc)
    table = doc.table_for(pid)
    ops.set_cell(doc, table.data_address(0, 0), number_cell(5))
    ops.remove_node(doc, pid)
    sync(doc)
    assert doc.tombstones and doc.tombstones[0].tables
    blob = save(doc)
    back = load(blob)
    assert back.tombstones[0].tables == doc.tombstones[0].tables
    assert back.tombstones[0].cells == doc.tombstones[0].cells
    assert save(back) == blob


def test_documents_saved_without_table_archives_still_load():
    doc = worked_doc()
    raw = document_to_dict(doc)
    raw["tombstones"] = [
        {
            "removed_at_version": 2,
            "parent_id": None,
            "child_index": None,
            "subtree": None,
            "cells": [],
            # older files had no "tables" key
        }
    ]
    back = document_from_dict(raw)
    assert back.tombstones[0].tables == []


# ---------------------------------------------------------------- load errors


def test_load_rejects_non_utf8_with_byte_position():
    with pytest.raises(ParseError, match=r"not UTF-8 at byte 2"):
        load(b'{"\xff": 1}')


def test_load_reports_json_position():
    with pytest.raises(ParseError, match=r"bad JSON at position"):
        load(b'{"schema_version": 1,,}')


def test_load_rejects_non_object_top_level():
    with pytest.raises(ParseError, match="top level"):
        load(b"[1,2,3]")


def test_load_requires_integer_schema_version():
    with pytest.raises(ParseError, match="schema_version"):
        load(b'{"id": "x"}')
    with pytest.raises(ParseError, match="schema_version"):
        load(b'{"schema_version": "1"}')


def test_load_rejects_future_schema_versions():
    blob = save(worked_doc())
    raw = json.loads(blob.decode("utf-8"))
    raw["schema_version"] = 2
    with pytest.raises(SchemaVersionError, match="unsupported schema version 2"):
        load(json.dumps(raw).encode("utf-8"))
    # And the specific error is still a ParseError for blanket handling.
    assert issubclass(SchemaVersionError, ParseError)


def test_load_rejects_missing_fields_as_malformed():
    blob = save(worked_doc())
    raw = json.loads(blob.decode("utf-8"))
    del raw["alternatives"]
    with pytest.raises(ParseError, match="malformed document"):
        load(json.dumps(raw).encode("utf-8"))


def test_load_rejects_unknown_cell_kinds():
    blob = save(worked_doc())
    raw = json.loads(blob.decode("utf-8"))
    key = next(iter(raw["grid"]["cells"]))
    raw["grid"]["cells"][key] = {"kind": "formula", "text": "=SUM()"}
    with pytest.raises(ParseError, match="unknown cell kind"):
        load(json.dumps(raw).encode("utf-8"))


def test_load_rejects_documents_that_fail_validation():
    blob = save(worked_doc())
    raw = json.loads(blob.decode("utf-8"))
    raw["tree"]["nodes"]["1"]["importance"] = 3
    with pytest.raises(ParseError, match="inconsistent"):
        load(json.dumps(raw).encode("utf-8"))


# ---------------------------------------------------------------- CSV export


def test_csv_matches_expected_bytes_exactly():
    doc = worked_doc()
    # Clear T's judgment on B so one cell exports empty.
    table = doc.table_for(0)
    ops.set_cell(doc, table.data_address(1, 1), None)
    out = export_tables_csv(doc)
    assert set(out) == {0}
    assert out[0] == "Scoring picks,A,B\r\nM,8,2\r\nT,4,\r\n"


def test_csv_quotes_fields_per_rfc4180():
    doc = new_decision(
        "q",
        ['He said "go", then left', "Plain"],
        ["speed, comfort"],
        doc_id="csvq",
    )
    sync(doc)
    out = export_tables_csv(doc)
    assert out[0].splitlines()[0] == 'q,"speed, comfort"'
    assert '"He said ""go"", then left"' in out[0]


def test_csv_renders_marks_as_repeated_x():
    doc = new_decision("m", ["A", "B"], ["votes"], doc_id="csvm")
    sync(doc)
    table = doc.table_for(0)
    ops.set_cell(doc, table.data_address(0, 0), mark_cell(2))
    ops.set_cell(doc, table.data_address(1, 0), mark_cell(1))
    out = export_tables_csv(doc)
    assert out[0] == "m,votes\r\nA,XX\r\nB,X\r\n"


def test_csv_exports_one_table_per_decomposed_node():
    doc = new_decision("n", ["A", "B"], ["p"], doc_id="csvn")
    ops.add_child(doc, doc.tree.resolve_path("root/p"), "leaf")
    sync(doc)
    out = export_tables_csv(doc)
    assert set(out) == {0, 1}
    assert out[1].startswith("p,leaf\r\n")


def test_csv_requires_a_synced_document():
    doc = worked_doc()
    ops.add_child(doc, doc.tree.root_id, "C")
    with pytest.raises(SyncRequiredError):
        export_tables_csv(doc)


# ---------------------------------------------------------------- reports


def test_full_report_exact_text():
    doc = worked_doc()
    report = export_report(doc, "full")
    assert report == (
        "Decision: pick\n"
        "Scoring goal: Scoring picks\n"
        "\n"
        "Value tree:\n"
        "- Scoring picks\n"
        "  - A (x2)\n"
        "  - B (x1)\n"
        "\n"
        "Scores:\n"
        "  1. M: 0.600\n"
        "  2. T: 0.600\n"
        "\n"
        "Recommendation: M\n"
    )


def test_bands_report_shows_labels_not_numbers():
    doc = worked_doc()
    report = export_report(doc, "bands")
    assert "  M: mid\n" in report
    assert "  T: mid\n" in report
    assert not SCORE_PATTERN.search(report)


def test_ranks_report_shows_order_only():
    doc = worked_doc()
    table = doc.table_for(0)
    ops.set_cell(doc, table.data_address(1, 0), number_cell(10))
    report = export_report(doc, "ranks")
    body = report.split("Ranking (scores withheld):\n", 1)[1]
    assert body.splitlines()[:2] == ["  T", "  M"]
    assert not SCORE_PATTERN.search(report)


def test_unjudged_alternatives_are_called_out_in_every_mode():
    doc = new_decision("u", ["A", "B"], ["x"], doc_id="rep1")
    sync(doc)
    table = doc.table_for(0)
    ops.set_cell(doc, table.data_address(0, 0), number_cell(7))
    assert "B: no judgments yet" in export_report(doc, "full")
    assert "B: not yet judged" in export_report(doc, "bands")
    assert "B (not yet judged)" in export_report(doc, "ranks")


def test_exclusions_appear_with_their_rationale():
    doc = new_decision("e", ["A", "B", "C"], ["x"], doc_id="rep2")
    sync(doc)
    table = doc.table_for(0)
    ops.set_cell(doc, table.data_address(0, 0), number_cell(7))
    ops.set_cell(doc, table.data_address(1, 0), number_cell(3))
    ops.set_cell(doc, table.data_address(2, 0), number_cell(5))
    ops.exclude_alternative(doc, "C", "ruled out by budget")
    report = export_report(doc, "bands")
    assert "Excluded alternatives:\n- C: ruled out by budget\n" in report
    # Excluded alternatives stay out of the ranking itself.
    assert "  C:" not in report.split("Score bands:")[1]


def test_report_rejects_unknown_redaction_mode():
    with pytest.raises(ValidationError, match="redaction must be one of"):
        export_report(worked_doc(), "secret")


def test_redacted_reports_never_leak_fractions_on_random_documents():
    for seed in range(30):
        rng = random.Random(7000 + seed)
        doc = fuzz.random_scored_document(rng)
        for mode in ("bands", "ranks"):
            report = export_report(doc, mode)
            assert not SCORE_PATTERN.search(report), (
                f"seed {seed} leaked a score in {mode} mode"
            )


def test_all_modes_list_alternatives_in_the_same_order():
    for seed in range(15):
        rng = random.Random(8000 + seed)
        doc = fuzz.random_scored_document(rng)

        def listed(report, header):
            tail = report.split(header, 1)[1]
            labels = []
            for line in tail.splitlines():
                if not line.startswith("  "):
                    break
                entry = line.strip()
                entry = re.sub(r"^\d+\. ", "", entry)
                entry = entry.split(":")[0].replace(" (not yet judged)", "")
                labels.append(entry)
            return labels

        full = listed(export_report(doc, "full"), "Scores:\n")
        bands = listed(export_report(doc, "bands"), "Score bands:\n")
        ranks = listed(export_report(doc, "ranks"), "Ranking (scores withheld):\n")
        assert full == bands == ranks, f"seed {seed} ordering drifted"


# ---------------------------------------------------------------- files and locks


def test_save_file_and_load_file_round_trip(tmp_path):
    doc = worked_doc()
    path = str(tmp_path / "pick.decision.json")
    save_file(doc, path)
    assert load_file(path).id == doc.id
    with open(path, "rb") as fh:
        assert fh.read() == save(doc)


def test_atomic_write_replaces_content_and_leaves_no_temp(tmp_path):
    path = str(tmp_path / "doc.json")
    atomic_write(path, b"first")
    atomic_write(path, b"second")
    with open(path, "rb") as fh:
        assert fh.read() == b"second"
    assert os.listdir(tmp_path) == ["doc.json"]


def test_file_lock_blocks_a_second_locker(tmp_path):
    path = str(tmp_path / "doc.json")
    entered = threading.Event()
    release = threading.Event()

    def holder():
        with file_lock(path):
            entered.set()
            release.wait(timeout=5)

    thread = threading.Thread(target=holder)
    thread.start()
    assert entered.wait(timeout=5)
    with open(path + ".lock", "w") as fh:
        with pytest.raises(BlockingIOError):
            fcntl.flock(fh.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
        release.set()
        thread.join(timeout=5)
        # Once the holder is gone the lock is free again.
        fcntl.flock(fh.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
        fcntl.flock(fh.fileno(), fcntl.LOCK_UN)
