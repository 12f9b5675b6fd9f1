from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from decisiongrid.errors import ValidationError
from decisiongrid.grid import (
    CellAddress,
    CellValue,
    ManagedTable,
    Rect,
    VirtualGrid,
    allocate_region,
    as_decimal,
    cell_display,
    decimal_str,
    mark_cell,
    number_cell,
    parse_cell_text,
    text_cell,
)

addresses = st.builds(
    CellAddress, st.integers(min_value=0, max_value=50), st.integers(min_value=0, max_value=50)
)


def test_negative_addresses_rejected():
    with pytest.raises(ValidationError):
        CellAddress(-1, 0)
    with pytest.raises(ValidationError):
        CellAddress(0, -3)


def test_as_decimal_canonical_forms():
    assert decimal_str(as_decimal("0.50")) == "0.5"
    assert decimal_str(as_decimal("7e2")) == "700"
    assert decimal_str(as_decimal(700)) == "700"
    assert decimal_str(as_decimal(0.1)) == "0.1"
    assert decimal_str(as_decimal("-003.140")) == "-3.14"
    assert decimal_str(as_decimal(Decimal("0E-5"))) == "0"


def test_as_decimal_rejects_junk():
    for bad in ["abc", "", "1/2", float("nan"), float("inf"), None, True]:
        with pytest.raises(ValidationError):
            as_decimal(bad)


def test_cell_factories_validate():
    with pytest.raises(ValidationError):
        text_cell("")
    with pytest.raises(ValidationError):
        mark_cell(0)
    with pytest.raises(ValidationError):
        CellValue("blob")
    assert mark_cell(2).count == 2
    assert number_cell("1.50").number == Decimal("1.5")


def test_parse_cell_text():
    assert parse_cell_text("  ") is None
    assert parse_cell_text("xXx") == mark_cell(3)
    assert parse_cell_text("8") == number_cell(8)
    assert parse_cell_text("-2.5") == number_cell("-2.5")
    assert parse_cell_text(" hello there ") == text_cell("hello there")


def test_cell_display():
    assert cell_display(None) == ""
    assert cell_display(text_cell("hi")) == "hi"
    assert cell_display(number_cell("2.50")) == "2.5"
    assert cell_display(mark_cell(3)) == "XXX"


def test_set_get_erase_roundtrip():
    grid = VirtualGrid()
    addr = CellAddress(3, 4)
    assert grid.get_cell(addr) is None
    grid.set_cell(addr, text_cell("x"))
    assert grid.get_cell(addr) == text_cell("x")
    grid.set_cell(addr, None)
    assert grid.get_cell(addr) is None
    assert grid.cells == {}  # erasing leaves nothing behind


def test_used_range_empty_and_bounding():
    grid = VirtualGrid()
    assert grid.used_range() is None
    grid.set_cell(CellAddress(0, 0), text_cell("a"))
    grid.set_cell(CellAddress(2, 3), text_cell("b"))
    assert grid.used_range() == Rect(0, 0, 2, 3)
    grid.set_cell(CellAddress(2, 3), None)
    assert grid.used_range() == Rect(0, 0, 0, 0)


@given(st.dictionaries(addresses, st.text(min_size=1, max_size=3), min_size=1, max_size=30))
def test_used_range_is_tight(cells):
    grid = VirtualGrid()
    for addr, text in cells.items():
        grid.set_cell(addr, text_cell(text))
    rect = grid.used_range()
    rows = [a.row for a in cells]
    cols = [a.col for a in cells]
    assert rect == Rect(min(rows), min(cols), max(rows), max(cols))


def test_allocation_empty_grid_starts_at_origin():
    assert allocate_region(VirtualGrid(), [], 6, 6) == CellAddress(0, 0)


def test_allocation_leaves_one_gap_row():
    grid = VirtualGrid()
    for row in range(3):  # used range rows 0..2
        grid.set_cell(CellAddress(row, 0), text_cell("x"))
    assert allocate_region(grid, [], 4, 4) == CellAddress(4, 0)


def test_allocation_stacks_successive_tables():
    grid = VirtualGrid()
    registry = []
    first = allocate_region(grid, registry, 6, 6)
    assert first == CellAddress(0, 0)
    registry.append(ManagedTable(node_id=1, anchor=first, n_rows=6, n_cols=6, column_bindings=[2, 3, 4, 5, 6]))
    second = allocate_region(grid, registry, 6, 6)
    assert second == CellAddress(7, 0)


def test_allocation_respects_empty_registry_region():
    # registry rows count even when the table has no cells written yet
    table = ManagedTable(node_id=1, anchor=CellAddress(0, 0), n_rows=3, n_cols=2, column_bindings=[2])
    assert allocate_region(VirtualGrid(), [table], 3, 3) == CellAddress(4, 0)


@given(
    st.lists(addresses, min_size=0, max_size=20),
    st.integers(min_value=1, max_value=8),
    st.integers(min_value=1, max_value=8),
)
def test_allocation_never_overlaps_used_cells(cells, n_rows, n_cols):
    grid = VirtualGrid()
    for addr in cells:
        grid.set_cell(addr, text_cell("x"))
    anchor = allocate_region(grid, [], n_rows, n_cols)
    region = Rect(anchor.row, anchor.col, anchor.row + n_rows - 1, anchor.col + n_cols - 1)
    assert all(not region.contains(addr) for addr in grid.cells)
    used = grid.used_range()
    if used is not None:  # one blank row between used range and the new region
        assert anchor.row == used.bottom + 2


def test_rect_overlap_and_contains():
    a = Rect(0, 0, 2, 2)
    assert a.overlaps(Rect(2, 2, 4, 4))
    assert not a.overlaps(Rect(3, 0, 4, 2))
    assert a.contains(CellAddress(1, 2))
    assert not a.contains(CellAddress(3, 0))


def test_table_addressing():
    table = ManagedTable(node_id=7, anchor=CellAddress(4, 0), n_rows=3, n_cols=3, column_bindings=[8, 9])
    assert table.region() == Rect(4, 0, 6, 2)
    assert table.header_address() == CellAddress(4, 0)
    assert table.label_address(1) == CellAddress(6, 0)
    assert table.data_address(0, 1) == CellAddress(5, 2)
