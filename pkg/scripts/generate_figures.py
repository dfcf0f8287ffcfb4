#!/usr/bin/env python3
"""Generate the documentation figures from the reductions themselves.

Builds the triangle coloring instance and the four-set cover instance,
solves both, and writes SVG drawings of the pieces and of the solved
layouts into ``docs/assets/img/``. The figures come straight from the
library, so the docs regenerate them rather than storing hand-drawn copies.

Run locally with::

    uv run python scripts/generate_figures.py
"""

from __future__ import annotations

from pathlib import Path

from superpoly.reductions.coloring import (
    Graph,
    build_instance,
    build_vertex_polyomino,
    deck_solve,
    decks,
)
from superpoly.reductions.macrocell import to_two_color
from superpoly.reductions.setcover import aligned_solve, sample_set_cover
from superpoly.reductions.setcover import build_instance as build_setcover_instance
from superpoly.render import render_svg

ROOT = Path(__file__).resolve().parent.parent
OUT_DIR = ROOT / "docs" / "assets" / "img"

CELL_SIZE = 12


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    triangle = build_instance(Graph.complete(3)).instance
    path_graph = build_instance(Graph(3, frozenset({(0, 1), (1, 2)})))
    figures = {
        "triangle-pieces.svg": render_svg(triangle, cell_size=CELL_SIZE),
        "path-decks.svg": render_svg(
            path_graph.instance, deck_solve(path_graph).layout, cell_size=CELL_SIZE
        ),
        "path-deck-0-2.svg": render_svg(decks(path_graph, [[0, 2], [1]])[0].union, cell_size=CELL_SIZE),
    }

    vertex = build_vertex_polyomino(Graph.complete(3), 0)
    figures["vertex-two-color.svg"] = render_svg(to_two_color(vertex), cell_size=CELL_SIZE // 4)

    sc = sample_set_cover()
    cover_inst = build_setcover_instance(sc)
    result, _cover = aligned_solve(sc)
    figures["setcover-pieces.svg"] = render_svg(cover_inst, cell_size=CELL_SIZE // 2)
    figures["setcover-aligned.svg"] = render_svg(cover_inst, result.layout, cell_size=CELL_SIZE // 2)

    for filename, svg in figures.items():
        (OUT_DIR / filename).write_text(svg, encoding="utf-8")
        print(f"wrote {filename}")


if __name__ == "__main__":
    main()
