"""Translation, compatibility and containment between colored polyominoes.

Offsets follow one convention throughout: placing ``pv`` at offset ``o``
relative to ``pu`` puts cell (x, y) of ``pv`` on cell (x + dx, y + dy) of
``pu``.
"""

from __future__ import annotations

from superpoly.errors import ColorConflict
from superpoly.geometry.models import (
    NEIGHBOURS,
    Cell,
    CellCluster,
    ColorId,
    Offset,
    Polyomino,
)


def translate(p: Polyomino | CellCluster, o: Offset) -> dict[Cell, ColorId]:
    dx, dy = o
    cells = p.cells if isinstance(p, Polyomino) else p
    return {Cell(x + dx, y + dy): color for (x, y), color in cells.items()}


def _conflicts(pu: CellCluster, pv: CellCluster, o: Offset) -> list[Cell]:
    dx, dy = o
    clashes = []
    for (x, y), color in pv.items():
        target = Cell(x + dx, y + dy)
        other = pu.get(target)
        if other is not None and other != color:
            clashes.append(target)
    return clashes


def compatible(pu: Polyomino | CellCluster, pv: Polyomino | CellCluster, o: Offset) -> bool:
    """True iff every cell shared by ``pu`` and ``pv`` moved by ``o`` agrees in color."""
    u = pu.cells if isinstance(pu, Polyomino) else pu
    v = pv.cells if isinstance(pv, Polyomino) else pv
    dx, dy = o
    for (x, y), color in v.items():
        other = u.get(Cell(x + dx, y + dy))
        if other is not None and other != color:
            return False
    return True


def overlap_count(pu: Polyomino | CellCluster, pv: Polyomino | CellCluster, o: Offset) -> int:
    u = pu.cells if isinstance(pu, Polyomino) else pu
    v = pv.cells if isinstance(pv, Polyomino) else pv
    dx, dy = o
    return sum(1 for (x, y) in v if (x + dx, y + dy) in u)


def superimpose(
    pu: Polyomino | CellCluster, pv: Polyomino | CellCluster, o: Offset
) -> dict[Cell, ColorId]:
    """Union of ``pu`` and ``pv`` moved by ``o``.

    Raises ColorConflict naming the lowest (y, x) conflicting cell.
    """
    u = pu.cells if isinstance(pu, Polyomino) else pu
    v = pv.cells if isinstance(pv, Polyomino) else pv
    clashes = _conflicts(u, v, o)
    if clashes:
        first = min(clashes, key=lambda c: (c.y, c.x))
        mine = u[first]
        theirs = v[Cell(first.x - o.dx, first.y - o.dy)]
        raise ColorConflict(first, mine, theirs)
    union = dict(u)
    union.update(translate(v, o))
    return union


def is_superpolyomino(container: Polyomino, piece: Polyomino) -> list[Offset]:
    """Every offset at which ``piece`` lies inside ``container`` with matching colors.

    Offsets are scanned over the bounding-box difference and returned in
    (dy, dx) order; an empty list means ``container`` is not a superpolyomino.
    """
    found: list[Offset] = []
    if piece.width > container.width or piece.height > container.height:
        return found
    cells = container.cells
    items = list(piece.cells.items())
    for dy in range(container.height - piece.height + 1):
        for dx in range(container.width - piece.width + 1):
            if all(cells.get((x + dx, y + dy)) == color for (x, y), color in items):
                found.append(Offset(dx, dy))
    return found


def touches(pu: CellCluster, pv: CellCluster, o: Offset) -> bool:
    """True iff ``pv`` moved by ``o`` shares a cell or an edge with ``pu``."""
    dx, dy = o
    for x, y in pv:
        tx, ty = x + dx, y + dy
        if (tx, ty) in pu:
            return True
        for ndx, ndy in NEIGHBOURS:
            if (tx + ndx, ty + ndy) in pu:
                return True
    return False


def contact_offsets(pu: CellCluster, pv: CellCluster) -> list[Offset]:
    """All offsets where ``pv`` overlaps or edge-touches ``pu``, in (dy, dx) order.

    Compatibility is not checked here.
    """
    shifts = ((0, 0), *NEIGHBOURS)
    seen: set[Offset] = set()
    for ux, uy in pu:
        for vx, vy in pv:
            for sx, sy in shifts:
                seen.add(Offset(ux + sx - vx, uy + sy - vy))
    return sorted(seen, key=lambda o: (o.dy, o.dx))


def max_overlap(pu: Polyomino, pv: Polyomino) -> tuple[Offset, int]:
    """Best compatible, connected placement of ``pv`` against ``pu``.

    Maximizes the number of shared cells; ties go to the smallest (dy, dx).
    An edge-adjacent placement (overlap 0) always exists, so this never fails.
    """
    u = pu.cells
    v = pv.cells
    best: tuple[Offset, int] | None = None
    for o in contact_offsets(u, v):
        if not compatible(u, v, o):
            continue
        count = overlap_count(u, v, o)
        if best is None or count > best[1]:
            best = (o, count)
    assert best is not None
    return best
