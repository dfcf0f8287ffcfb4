"""Two-color macrocell codec.

Every cell of color c becomes an 8×8 block with a black border and a gray
interior; the interior cells (2,2), (3,3), (4,4) spell c in binary, gray
for 0 and black for 1, least significant bit at (2,2).
"""

from __future__ import annotations

from dataclasses import dataclass

from superpoly.errors import MalformedMacrocell, PaletteTooLarge
from superpoly.geometry.models import BLACK, GRAY, Cell, ColorId, Polyomino


@dataclass(frozen=True)
class TwoColorCodec:
    side: int = 8
    bit_cells: tuple[tuple[int, int], ...] = ((2, 2), (3, 3), (4, 4))
    boundary: ColorId = BLACK
    fill: ColorId = GRAY
    one: ColorId = BLACK

    def __post_init__(self) -> None:
        inner = range(1, self.side - 1)
        for x, y in self.bit_cells:
            if x not in inner or y not in inner:
                raise ValueError(f"Bit cell {(x, y)} is not strictly inside the macrocell.")

    @property
    def capacity(self) -> int:
        return 1 << len(self.bit_cells)

    def on_boundary(self, x: int, y: int) -> bool:
        return x in (0, self.side - 1) or y in (0, self.side - 1)

    def block(self, color: ColorId) -> dict[tuple[int, int], ColorId]:
        """Local cells of the macrocell for ``color``."""
        if not 0 <= color < self.capacity:
            raise PaletteTooLarge(color, self.capacity)
        cells: dict[tuple[int, int], ColorId] = {}
        for y in range(self.side):
            for x in range(self.side):
                cells[(x, y)] = self.boundary if self.on_boundary(x, y) else self.fill
        for bit, cell in enumerate(self.bit_cells):
            if color >> bit & 1:
                cells[cell] = self.one
        return cells

    def read(self, local: dict[tuple[int, int], ColorId], where: tuple[int, int]) -> ColorId:
        """Decode one block of local cells, checking every cell."""
        if len(local) != self.side * self.side:
            raise MalformedMacrocell(where, f"{len(local)} of {self.side * self.side} cells present")
        bits = {cell: bit for bit, cell in enumerate(self.bit_cells)}
        color = 0
        for (x, y), value in local.items():
            if self.on_boundary(x, y):
                if value != self.boundary:
                    raise MalformedMacrocell(where, f"boundary cell {(x, y)} is not black")
            elif (x, y) in bits:
                if value == self.one:
                    color |= 1 << bits[(x, y)]
                elif value != self.fill:
                    raise MalformedMacrocell(where, f"bit cell {(x, y)} has color {value}")
            elif value != self.fill:
                raise MalformedMacrocell(where, f"interior cell {(x, y)} is set")
        return color


def to_two_color(p: Polyomino, codec: TwoColorCodec | None = None) -> Polyomino:
    codec = codec or TwoColorCodec()
    side = codec.side
    cells: dict[Cell, ColorId] = {}
    for (x, y), color in p.cells.items():
        for (lx, ly), value in codec.block(color).items():
            cells[Cell(side * x + lx, side * y + ly)] = value
    return Polyomino(cells)


def from_two_color(p: Polyomino, codec: TwoColorCodec | None = None) -> Polyomino:
    """Inverse of :func:`to_two_color`; blocks must sit on the macrocell lattice."""
    codec = codec or TwoColorCodec()
    side = codec.side
    blocks: dict[tuple[int, int], dict[tuple[int, int], ColorId]] = {}
    for (x, y), color in p.cells.items():
        blocks.setdefault((x // side, y // side), {})[(x % side, y % side)] = color
    decoded = {Cell(*where): codec.read(local, where) for where, local in sorted(blocks.items())}
    return Polyomino(decoded)
