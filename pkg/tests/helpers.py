"""Shared oracle machinery for randomized sessions.

The tracker mirrors, completely outside the engine, where every
judgment and loose user cell ought to be after each sync: judgments
follow their (parent, child, alternative) binding wherever the column
lands, user cells stay put unless the sync report says they moved.
"""

import json
import threading
import time
from contextlib import contextmanager
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from decisiongrid.model import DecisionDocument, validate


class StubSuggestHandler(BaseHTTPRequestHandler):
    """Serves whatever response the enclosing test configured."""

    def do_POST(self):  # noqa: N802  (stdlib handler naming)
        length = int(self.headers.get("Content-Length", 0))
        body = self.rfile.read(length)
        self.server.requests.append(
            {"headers": dict(self.headers), "body": json.loads(body.decode("utf-8"))}
        )
        if self.server.response_delay:
            time.sleep(self.server.response_delay)
        status, payload = self.server.response
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):  # keep test output clean
        pass


@contextmanager
def stub_endpoint(status=200, payload=b"{}", delay=0.0):
    server = ThreadingHTTPServer(("127.0.0.1", 0), StubSuggestHandler)
    server.requests = []
    server.response = (status, payload)
    server.response_delay = delay
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield server, f"http://127.0.0.1:{server.server_address[1]}/suggest"
    finally:
        server.shutdown()
        server.server_close()


class SessionTracker:
    def __init__(self, document: DecisionDocument):
        self.document = document
        self.judgments = {}  # (parent_id, child_id, alt_index) -> CellValue
        self.user_cells = {}  # CellAddress -> CellValue

    def observe(self, record: dict) -> None:
        op = record["op"]
        if op == "judgment":
            key = (record["parent_id"], record["child_id"], record["alt_index"])
            self.judgments[key] = record["value"]
        elif op == "user_cell":
            self.user_cells[record["addr"]] = record["value"]
        elif op == "remove_node":
            gone = set(record["subtree_ids"])
            self.judgments = {
                key: value
                for key, value in self.judgments.items()
                if key[0] not in gone and key[1] not in gone
            }

    def check_after_sync(self, report) -> None:
        doc = self.document
        assert validate(doc) == [], validate(doc)

        moves = dict(report.cells_moved)
        self.user_cells = {
            moves.get(addr, addr): value for addr, value in self.user_cells.items()
        }
        for addr, value in self.user_cells.items():
            assert doc.grid.get_cell(addr) == value, f"user cell lost at {addr}"

        for (parent_id, child_id, alt_index), value in self.judgments.items():
            table = doc.table_for(parent_id)
            assert table is not None, f"table for node {parent_id} vanished"
            column = table.column_bindings.index(child_id)
            found = doc.grid.get_cell(table.data_address(alt_index, column))
            assert found == value, (
                f"judgment ({parent_id}, {child_id}, alt {alt_index}) "
                f"expected {value}, found {found}"
            )

        regions = [t.region() for t in doc.registry]
        for i, first in enumerate(regions):
            for second in regions[i + 1 :]:
                assert not first.overlaps(second)
