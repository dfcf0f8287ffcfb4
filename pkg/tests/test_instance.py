"""Unit tests for instances, layouts, their file formats and layout evaluation."""

from pathlib import Path

import pytest

from superpoly.errors import (
    DisconnectedUnion,
    DuplicatePieceName,
    EmptyInstance,
    FormatError,
    IncompatiblePair,
    LayoutMismatch,
)
from superpoly.geometry.models import BLACK, GRAY, Cell, Offset, Polyomino
from superpoly.solver.evaluate import evaluate_layout, layout_union
from superpoly.solver.instance import (
    Instance,
    Layout,
    emit_instance,
    emit_layout,
    format_provenance,
    load_instance,
    parse_instance,
    parse_layout,
    parse_provenance,
    save_instance,
)

INSTANCE_TEXT = """\
# reduction: coloring |V|=3 edges=0-1,0-2 two-color=no
poly a
g.
gg

poly b
k
"""

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def two_cells() -> Instance:
    return Instance.of([Polyomino.filled(1, 1), Polyomino.filled(1, 1)])


# ---------------------------------------------------------------------------
# Instance
# ---------------------------------------------------------------------------


def test_instance_names_and_total(two_cells: Instance) -> None:
    assert two_cells.names == ["p0", "p1"]
    assert two_cells.total_cells == 2
    assert len(two_cells) == 2


def test_instance_rejects_empty() -> None:
    with pytest.raises(EmptyInstance):
        Instance(())


def test_instance_rejects_duplicate_names() -> None:
    p = Polyomino.filled(1, 1)
    with pytest.raises(DuplicatePieceName):
        Instance((("a", p), ("a", p)))


# ---------------------------------------------------------------------------
# Provenance header
# ---------------------------------------------------------------------------


def test_provenance_round_trip() -> None:
    line = "# reduction: setcover n=4 m=4 sets=1,2;1,4;2,3,4;2,4"
    provenance = parse_provenance(line)
    assert provenance == {"kind": "setcover", "n": "4", "m": "4", "sets": "1,2;1,4;2,3,4;2,4"}
    assert format_provenance(provenance) == line


def test_provenance_with_empty_edge_list() -> None:
    provenance = parse_provenance("# reduction: coloring |V|=3 edges= two-color=no")
    assert provenance["edges"] == ""


def test_provenance_rejects_bare_token() -> None:
    with pytest.raises(FormatError):
        parse_provenance("# reduction: coloring oops")


# ---------------------------------------------------------------------------
# Instance files
# ---------------------------------------------------------------------------


def test_parse_instance() -> None:
    inst = parse_instance(INSTANCE_TEXT)
    assert inst.names == ["a", "b"]
    assert inst.reduction == "coloring"
    assert inst.provenance["|V|"] == "3"
    assert inst[0].size == 3
    assert inst[1] == Polyomino({Cell(0, 0): BLACK})


def test_instance_file_round_trip(tmp_path: Path) -> None:
    inst = parse_instance(INSTANCE_TEXT)
    path = tmp_path / "example.inst"
    save_instance(inst, path)
    again = load_instance(path)
    assert again.pieces == inst.pieces
    assert again.provenance == inst.provenance
    assert emit_instance(again) == emit_instance(inst)


def test_parse_instance_rejects_rows_before_poly() -> None:
    with pytest.raises(FormatError) as info:
        parse_instance("gg\npoly a\ng\n")
    assert info.value.line == 1


def test_parse_instance_without_pieces() -> None:
    with pytest.raises(EmptyInstance):
        parse_instance("# nothing here\n")


# ---------------------------------------------------------------------------
# Layout files
# ---------------------------------------------------------------------------


def test_layout_round_trip(two_cells: Instance) -> None:
    layout = Layout((Offset(0, 0), Offset(-2, 5)))
    text = emit_layout(two_cells, layout)
    assert text == "place p0 0 0\nplace p1 -2 5\n"
    assert parse_layout(text, two_cells) == layout


def test_layout_names_must_follow_instance_order(two_cells: Instance) -> None:
    with pytest.raises(LayoutMismatch):
        parse_layout("place p1 0 0\nplace p0 0 0\n", two_cells)


def test_layout_offsets_must_be_integers(two_cells: Instance) -> None:
    with pytest.raises(FormatError):
        parse_layout("place p0 0 0\nplace p1 x 0\n", two_cells)


def test_layout_anchored_moves_piece_to_origin() -> None:
    layout = Layout((Offset(3, 1), Offset(5, 0)))
    assert layout.anchored(1) == Layout((Offset(-2, 1), Offset(0, 0)))


# ---------------------------------------------------------------------------
# evaluate_layout / layout_union
# ---------------------------------------------------------------------------


def test_evaluate_stacked_cells(two_cells: Instance) -> None:
    assert evaluate_layout(two_cells, Layout((Offset(0, 0), Offset(0, 0)))) == 1


def test_evaluate_disconnected_cells(two_cells: Instance) -> None:
    with pytest.raises(DisconnectedUnion):
        evaluate_layout(two_cells, Layout((Offset(0, 0), Offset(3, 0))))


def test_evaluate_color_clash_names_pieces() -> None:
    inst = Instance.of([Polyomino.filled(1, 1, GRAY), Polyomino.filled(1, 1, BLACK)])
    with pytest.raises(IncompatiblePair) as info:
        evaluate_layout(inst, Layout((Offset(0, 0), Offset(0, 0))))
    assert info.value.pair == (0, 1)
    assert info.value.cell == Cell(0, 0)


def test_evaluate_wrong_length(two_cells: Instance) -> None:
    with pytest.raises(LayoutMismatch):
        evaluate_layout(two_cells, Layout((Offset(0, 0),)))


def test_layout_union_is_superpolyomino_of_each_piece() -> None:
    inst = parse_instance(INSTANCE_TEXT)
    union = layout_union(inst, Layout((Offset(0, 0), Offset(1, 1))))
    assert union.size == 4
    assert union.get((1, 1)) == BLACK
