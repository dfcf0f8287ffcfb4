"""ASCII and SVG pictures of polyominoes, instances and solved layouts."""

from __future__ import annotations

import colorsys
from collections.abc import Sequence

import svgwrite

from superpoly.geometry.gridtext import emit_polyomino
from superpoly.geometry.models import COLOR_NAMES, ORIGIN, ColorId, Offset, Polyomino
from superpoly.solver.instance import Instance, Layout, emit_instance

DEFAULT_CELL_SIZE = 16
DEFAULT_STROKE_WIDTH = 1
GRID_STROKE = "#333333"

Placement = tuple[str, Polyomino, Offset]


def render_ascii(item: Polyomino | Instance) -> str:
    """The grid text itself; it parses back to the same polyomino."""
    if isinstance(item, Instance):
        return emit_instance(item)
    return emit_polyomino(item)


def svg_fill(color: ColorId) -> str:
    if color < len(COLOR_NAMES):
        return COLOR_NAMES[color]
    # spread extra colors around the hue circle
    hue = (color * 0.618033988749895) % 1.0
    r, g, b = colorsys.hls_to_rgb(hue, 0.55, 0.6)
    return svgwrite.rgb(round(r * 255), round(g * 255), round(b * 255))


def placements_for(item: Polyomino | Instance, layout: Layout | None = None) -> list[Placement]:
    """Where each piece is drawn.

    Without a layout, instance pieces are set side by side with one empty
    column between them.
    """
    if isinstance(item, Polyomino):
        return [("piece", item, ORIGIN)]
    if layout is not None:
        return [(name, poly, o) for (name, poly), o in zip(item.pieces, layout)]
    placed: list[Placement] = []
    x = 0
    for name, poly in item.pieces:
        placed.append((name, poly, Offset(x, 0)))
        x += poly.width + 1
    return placed


def svg_drawing(
    placements: Sequence[Placement],
    cell_size: int = DEFAULT_CELL_SIZE,
    stroke_width: int = DEFAULT_STROKE_WIDTH,
) -> svgwrite.Drawing:
    """One group per piece, one square per cell; larger y is drawn higher."""
    xs = [o.dx + x for _name, poly, o in placements for x, _y in poly.cells]
    ys = [o.dy + y for _name, poly, o in placements for _x, y in poly.cells]
    min_x, max_x, min_y, max_y = min(xs), max(xs), min(ys), max(ys)
    width = (max_x - min_x + 1) * cell_size
    height = (max_y - min_y + 1) * cell_size
    dwg = svgwrite.Drawing(size=(width, height), profile="tiny")
    for index, (name, poly, o) in enumerate(placements):
        group = dwg.add(dwg.g(id=f"piece{index}", stroke=GRID_STROKE, stroke_width=stroke_width))
        group.set_desc(title=name)
        for (x, y), color in sorted(poly.cells.items(), key=lambda item: (item[0].y, item[0].x)):
            left = (o.dx + x - min_x) * cell_size
            top = (max_y - (o.dy + y)) * cell_size
            group.add(dwg.rect(insert=(left, top), size=(cell_size, cell_size), fill=svg_fill(color)))
    return dwg


def render_svg(
    item: Polyomino | Instance,
    layout: Layout | None = None,
    cell_size: int = DEFAULT_CELL_SIZE,
    stroke_width: int = DEFAULT_STROKE_WIDTH,
) -> str:
    return svg_drawing(placements_for(item, layout), cell_size, stroke_width).tostring()
