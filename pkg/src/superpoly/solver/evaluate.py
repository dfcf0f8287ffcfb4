from __future__ import annotations

from superpoly.errors import DisconnectedUnion, IncompatiblePair, LayoutMismatch
from superpoly.geometry.models import Cell, ColorId, Polyomino, components, normalize
from superpoly.solver.instance import Instance, Layout


def _place_all(inst: Instance, lay: Layout) -> dict[Cell, ColorId]:
    if len(lay) != len(inst):
        raise LayoutMismatch(f"Layout has {len(lay)} offsets for {len(inst)} pieces.")
    union: dict[Cell, ColorId] = {}
    owner: dict[Cell, int] = {}
    for index, (poly, (dx, dy)) in enumerate(zip(inst, lay)):
        for (x, y), color in poly.cells.items():
            cell = Cell(x + dx, y + dy)
            existing = union.get(cell)
            if existing is None:
                union[cell] = color
                owner[cell] = index
            elif existing != color:
                raise IncompatiblePair(owner[cell], index, cell)
    return union


def evaluate_layout(inst: Instance, lay: Layout) -> int:
    """Size of the union of all placed pieces.

    Raises IncompatiblePair on a color clash and DisconnectedUnion when the
    placed pieces do not form one polyomino.
    """
    union = _place_all(inst, lay)
    parts = components(union)
    if len(parts) != 1:
        raise DisconnectedUnion(len(parts))
    return len(union)


def layout_union(inst: Instance, lay: Layout) -> Polyomino:
    """The normalized superpolyomino realised by a valid layout."""
    union = _place_all(inst, lay)
    parts = components(union)
    if len(parts) != 1:
        raise DisconnectedUnion(len(parts))
    poly, _shift = normalize(union)
    return poly
