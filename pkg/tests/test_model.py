import pytest

from decisiongrid.errors import NotFoundError, ValidationError
from decisiongrid.grid import CellAddress, ManagedTable
from decisiongrid.model import (
    DEFAULT_SCALE,
    Judgment,
    LeafScale,
    mark_judgment,
    new_decision,
    numeric_judgment,
    validate,
)


def make_doc(**overrides):
    kwargs = dict(
        goal="pick a fruit",
        alternatives=["apple", "pear", "plum"],
        attributes=["taste", "price"],
        scoring_goal="Scoring fruit",
    )
    kwargs.update(overrides)
    return new_decision(**kwargs)


def test_new_decision_shape():
    doc = make_doc()
    assert doc.version == 0
    assert doc.tree.root_id == 0
    assert doc.tree.nodes[0].name == "Scoring fruit"  # root named after scoring goal
    assert [doc.tree.nodes[c].name for c in doc.tree.children_of(0)] == ["taste", "price"]
    assert [a.label for a in doc.alternatives] == ["apple", "pear", "plum"]
    assert [a.declaration_index for a in doc.alternatives] == [0, 1, 2]
    assert doc.registry == [] and doc.grid.cells == {}
    assert validate(doc) == []


def test_root_falls_back_to_goal():
    doc = make_doc(scoring_goal="")
    assert doc.tree.nodes[0].name == "pick a fruit"


def test_new_decision_rejects_bad_input():
    with pytest.raises(ValidationError):
        make_doc(goal="   ")
    with pytest.raises(ValidationError):
        make_doc(alternatives=["only one"])
    with pytest.raises(ValidationError, match="duplicate alternative: apple"):
        make_doc(alternatives=["apple", "apple"])
    with pytest.raises(ValidationError):
        make_doc(alternatives=["apple", "  "])
    with pytest.raises(ValidationError, match="duplicate attribute"):
        make_doc(attributes=["taste", "taste"])
    with pytest.raises(ValidationError):
        make_doc(attributes=["taste", " "])


def test_node_ids_are_deterministic():
    a, b = make_doc(), make_doc()
    assert list(a.tree.nodes) == list(b.tree.nodes) == [0, 1, 2]
    assert a.tree.next_id == 3


def test_resolve_path():
    doc = make_doc()
    assert doc.tree.resolve_path("root") == 0
    assert doc.tree.resolve_path("root/price") == 2
    with pytest.raises(NotFoundError):
        doc.tree.resolve_path("root/speed")
    with pytest.raises(NotFoundError):
        doc.tree.resolve_path("price")


def test_leaf_scale_validation():
    with pytest.raises(ValidationError):
        LeafScale(5, 5)
    with pytest.raises(ValidationError):
        LeafScale(10, 0)
    with pytest.raises(ValidationError):
        LeafScale(0, 1, "sideways")
    assert DEFAULT_SCALE.direction == "higher_is_better"


def test_judgment_kinds():
    assert numeric_judgment("2.5").number is not None
    assert mark_judgment(2).count == 2
    with pytest.raises(ValidationError):
        mark_judgment(0)
    with pytest.raises(ValidationError):
        Judgment("maybe")


def test_validate_flags_duplicate_alternative():
    doc = make_doc()
    doc.alternatives[1].label = "apple"
    assert any("duplicate alternative: apple" in v for v in validate(doc))


def test_validate_flags_bad_importance():
    doc = make_doc()
    doc.tree.nodes[1].importance = 3
    assert any("importance 3" in v for v in validate(doc))


def test_validate_flags_unreachable_and_cycle():
    doc = make_doc()
    doc.tree.children[2].append(1)  # taste now under both root and price
    problems = validate(doc)
    assert any("child lists" in v for v in problems)


def test_validate_flags_registry_staleness_only_outside_sync_mode():
    doc = make_doc()
    # a table for a node that was deleted from the tree
    doc.registry.append(
        ManagedTable(node_id=99, anchor=CellAddress(0, 0), n_rows=4, n_cols=2, column_bindings=[1])
    )
    assert any("missing node 99" in v for v in validate(doc))
    assert validate(doc, for_sync=True) == []  # sync exists to repair exactly this


def test_validate_flags_primitive_table_and_column_drift():
    doc = make_doc()
    doc.registry.append(
        ManagedTable(node_id=1, anchor=CellAddress(0, 0), n_rows=4, n_cols=1, column_bindings=[])
    )
    assert any("primitive" in v for v in validate(doc))
    doc.registry[0] = ManagedTable(
        node_id=0, anchor=CellAddress(0, 0), n_rows=4, n_cols=2, column_bindings=[1]
    )
    assert any("out of step" in v for v in validate(doc))
    assert validate(doc, for_sync=True) == []


def test_validate_flags_structural_table_problems_in_both_modes():
    doc = make_doc()
    doc.registry.append(
        ManagedTable(node_id=0, anchor=CellAddress(0, 0), n_rows=4, n_cols=3, column_bindings=[1, 2])
    )
    doc.registry.append(
        ManagedTable(node_id=1, anchor=CellAddress(2, 1), n_rows=4, n_cols=2, column_bindings=[5])
    )
    problems = validate(doc, for_sync=True)
    assert any("overlap" in v for v in problems)
    doc.registry[1] = ManagedTable(
        node_id=1, anchor=CellAddress(10, 0), n_rows=2, n_cols=2, column_bindings=[5]
    )
    assert any("expected 4 rows" in v for v in validate(doc, for_sync=True))


def test_excluded_bookkeeping():
    doc = make_doc()
    assert [a.label for a in doc.live_alternatives()] == ["apple", "pear", "plum"]
    with pytest.raises(NotFoundError):
        doc.find_alternative("kiwi")
