"""Sparse virtual grid.

Cells live in a map keyed by address; absence of a key is how an empty
cell is represented, so the grid never stores explicit empties.  Numbers
are Decimal throughout so that values survive save/load byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from .errors import ValidationError

TEXT = "text"
NUMBER = "number"
MARK = "mark"


def as_decimal(value) -> Decimal:
    """Coerce an int/float/str/Decimal to a canonical finite Decimal."""
    if isinstance(value, bool):
        raise ValidationError(f"not a number: {value!r}")
    if isinstance(value, Decimal):
        dec = value
    elif isinstance(value, int):
        dec = Decimal(value)
    elif isinstance(value, float):
        dec = Decimal(str(value))
    elif isinstance(value, str):
        try:
            dec = Decimal(value.strip())
        except InvalidOperation:
            raise ValidationError(f"not a number: {value!r}") from None
    else:
        raise ValidationError(f"not a number: {value!r}")
    if not dec.is_finite():
        raise ValidationError(f"not a finite number: {value!r}")
    if dec == 0:
        return Decimal(0)
    return dec.normalize()


def decimal_str(value: Decimal) -> str:
    """Render a Decimal without exponent notation ('700', not '7E+2')."""
    return format(value, "f")


@dataclass(frozen=True, order=True)
class CellAddress:
    row: int
    col: int

    def __post_init__(self):
        if self.row < 0 or self.col < 0:
            raise ValidationError(f"negative cell address ({self.row}, {self.col})")


@dataclass(frozen=True)
class CellValue:
    """One of: text, number, or a mark tally (count of X marks)."""

    kind: str
    text: str = ""
    number: Decimal | None = None
    count: int = 0

    def __post_init__(self):
        if self.kind not in (TEXT, NUMBER, MARK):
            raise ValidationError(f"unknown cell kind {self.kind!r}")


def text_cell(text: str) -> CellValue:
    if not isinstance(text, str) or text == "":
        raise ValidationError("text cell needs a non-empty string")
    return CellValue(TEXT, text=text)


def number_cell(value) -> CellValue:
    return CellValue(NUMBER, number=as_decimal(value))


def mark_cell(count: int = 1) -> CellValue:
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise ValidationError(f"mark count must be a positive integer, got {count!r}")
    return CellValue(MARK, count=count)


def parse_cell_text(text: str) -> CellValue | None:
    """Interpret typed input the way a spreadsheet would.

    Blank erases, a run of X letters is a mark tally, anything that
    parses as a number is a number, and the rest stays text.
    """
    if not isinstance(text, str):
        raise ValidationError(f"expected a string, got {text!r}")
    stripped = text.strip()
    if stripped == "":
        return None
    if all(ch in "xX" for ch in stripped):
        return mark_cell(len(stripped))
    try:
        return number_cell(stripped)
    except ValidationError:
        return text_cell(stripped)


def cell_display(value: CellValue | None) -> str:
    """Plain-text rendering, as used for CSV export and CLI table dumps."""
    if value is None:
        return ""
    if value.kind == TEXT:
        return value.text
    if value.kind == NUMBER:
        return decimal_str(value.number)
    return "X" * value.count


@dataclass(frozen=True, order=True)
class Rect:
    """Inclusive rectangle of cells."""

    top: int
    left: int
    bottom: int
    right: int

    def contains(self, addr: CellAddress) -> bool:
        return self.top <= addr.row <= self.bottom and self.left <= addr.col <= self.right

    def overlaps(self, other: "Rect") -> bool:
        return not (
            self.bottom < other.top
            or other.bottom < self.top
            or self.right < other.left
            or other.right < self.left
        )

    def addresses(self):
        for row in range(self.top, self.bottom + 1):
            for col in range(self.left, self.right + 1):
                yield CellAddress(row, col)


@dataclass
class VirtualGrid:
    cells: dict[CellAddress, CellValue] = field(default_factory=dict)

    def get_cell(self, addr: CellAddress) -> CellValue | None:
        return self.cells.get(addr)

    def set_cell(self, addr: CellAddress, value: CellValue | None) -> None:
        """Write a cell; None erases, so no explicit empty is ever stored."""
        if value is None:
            self.cells.pop(addr, None)
        else:
            self.cells[addr] = value

    def used_range(self) -> Rect | None:
        """Tightest bounding rectangle of non-empty cells, or None if blank."""
        if not self.cells:
            return None
        rows = [a.row for a in self.cells]
        cols = [a.col for a in self.cells]
        return Rect(min(rows), min(cols), max(rows), max(cols))


@dataclass
class ManagedTable:
    """Registry entry tying one non-primitive tree node to a grid region.

    Layout: header row (node name, then one column per bound child),
    then one row per alternative with its label in the first column.
    """

    node_id: int
    anchor: CellAddress
    n_rows: int
    n_cols: int
    column_bindings: list[int] = field(default_factory=list)

    def region(self) -> Rect:
        return Rect(
            self.anchor.row,
            self.anchor.col,
            self.anchor.row + self.n_rows - 1,
            self.anchor.col + self.n_cols - 1,
        )

    def header_address(self) -> CellAddress:
        return self.anchor

    def column_address(self, binding_index: int) -> int:
        """Grid column holding the data of the given bound child."""
        return self.anchor.col + 1 + binding_index

    def label_address(self, alt_index: int) -> CellAddress:
        return CellAddress(self.anchor.row + 1 + alt_index, self.anchor.col)

    def data_address(self, alt_index: int, binding_index: int) -> CellAddress:
        return CellAddress(self.anchor.row + 1 + alt_index, self.column_address(binding_index))


def allocate_region(grid: VirtualGrid, registry: list[ManagedTable], n_rows: int, n_cols: int) -> CellAddress:
    """Pick the anchor for a new table: below everything used so far.

    New tables go one blank row beyond the used range, at column 0, so
    they stack vertically and never touch existing cells or tables.
    """
    if n_rows < 1 or n_cols < 1:
        raise ValidationError("region must be at least 1x1")
    bottom = -2  # empty grid: anchor lands at row 0
    used = grid.used_range()
    if used is not None:
        bottom = used.bottom
    for table in registry:
        bottom = max(bottom, table.region().bottom)
    return CellAddress(bottom + 2, 0)
