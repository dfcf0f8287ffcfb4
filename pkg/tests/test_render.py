"""Tests for ASCII and SVG rendering."""

from xml.etree import ElementTree

from superpoly.geometry.gridtext import emit_polyomino, parse_polyomino
from superpoly.geometry.models import BLACK, GRAY, ORIGIN, RED, Cell, Offset, Polyomino
from superpoly.render import placements_for, render_ascii, render_svg, svg_fill
from superpoly.solver.instance import Instance, Layout, emit_instance

SVG_NS = "{http://www.w3.org/2000/svg}"
L_TROMINO = Polyomino({Cell(0, 0): GRAY, Cell(1, 0): RED, Cell(0, 1): BLACK})

# ---------------------------------------------------------------------------
# ASCII
# ---------------------------------------------------------------------------


def test_ascii_polyomino_parses_back() -> None:
    text = render_ascii(L_TROMINO)
    assert text == emit_polyomino(L_TROMINO)
    assert parse_polyomino(text) == L_TROMINO


def test_ascii_instance_is_instance_text() -> None:
    inst = Instance.of([L_TROMINO, Polyomino.filled(1, 1)])
    assert render_ascii(inst) == emit_instance(inst)


# ---------------------------------------------------------------------------
# Placement
# ---------------------------------------------------------------------------


def test_single_polyomino_sits_at_origin() -> None:
    assert placements_for(L_TROMINO) == [("piece", L_TROMINO, ORIGIN)]


def test_instance_pieces_are_spaced_one_column_apart() -> None:
    inst = Instance.of([Polyomino.filled(2, 1), Polyomino.filled(1, 1), Polyomino.filled(3, 1)])
    offsets = [o for _name, _poly, o in placements_for(inst)]
    assert offsets == [Offset(0, 0), Offset(3, 0), Offset(5, 0)]


def test_layout_offsets_are_used_as_given() -> None:
    inst = Instance.of([Polyomino.filled(1, 1), Polyomino.filled(1, 1)])
    layout = Layout((Offset(0, 0), Offset(-1, 2)))
    assert [o for _n, _p, o in placements_for(inst, layout)] == list(layout)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def test_named_colors_fill_with_their_name() -> None:
    assert svg_fill(GRAY) == "gray"
    assert svg_fill(RED) == "red"


def test_extra_colors_fill_with_rgb() -> None:
    assert svg_fill(9).startswith("rgb(")
    assert svg_fill(9) != svg_fill(10)


def test_svg_has_one_rect_per_cell() -> None:
    svg = render_svg(L_TROMINO)
    assert svg.startswith("<svg")
    assert svg.count("<rect") == 3
    assert 'id="piece0"' in svg


def test_svg_flips_y_axis() -> None:
    svg = render_svg(Polyomino({Cell(0, 0): GRAY, Cell(0, 1): RED}), cell_size=10)
    root = ElementTree.fromstring(svg)
    assert root.get("height") == "20"
    rects = {r.get("fill"): (r.get("x"), r.get("y")) for r in root.iter(f"{SVG_NS}rect")}
    assert rects == {"red": ("0", "0"), "gray": ("0", "10")}


def test_svg_groups_are_titled_by_piece_name() -> None:
    inst = Instance((("left", Polyomino.filled(1, 1)), ("right", Polyomino.filled(1, 1))))
    svg = render_svg(inst, Layout((Offset(0, 0), Offset(1, 0))))
    assert "<title>left</title>" in svg
    assert "<title>right</title>" in svg
    assert 'id="piece1"' in svg
