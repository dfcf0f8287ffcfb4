from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from types import MappingProxyType
from typing import NamedTuple

from superpoly.errors import DisconnectedCluster, EmptyCluster, UnknownColorName

ColorId = int

# Canonical palette order is fixed: macrocell encodings depend on it.
GRAY, BLACK, RED, GREEN, BLUE, PURPLE, ORANGE = range(7)
COLOR_NAMES: tuple[str, ...] = (
    "gray",
    "black",
    "red",
    "green",
    "blue",
    "purple",
    "orange",
)
MAX_PALETTE = 255
EMPTY_CHAR = "."
COMMENT_CHAR = "#"


class Cell(NamedTuple):
    x: int
    y: int


class Offset(NamedTuple):
    dx: int
    dy: int

    def __neg__(self) -> Offset:
        return Offset(-self.dx, -self.dy)

    def __add__(self, other: object) -> Offset:  # type: ignore[override]
        if not isinstance(other, tuple):
            return NotImplemented
        return Offset(self.dx + other[0], self.dy + other[1])

    @property
    def order_key(self) -> tuple[int, int]:
        """Sort key: offsets compare by (dy, dx) everywhere in superpoly."""
        return (self.dy, self.dx)


ORIGIN = Offset(0, 0)

# Intermediate cell → color maps; may be disconnected and unnormalized.
CellCluster = Mapping[Cell, ColorId]

NEIGHBOURS: tuple[tuple[int, int], ...] = ((1, 0), (-1, 0), (0, 1), (0, -1))


def color_name(color: ColorId) -> str:
    if 0 <= color < len(COLOR_NAMES):
        return COLOR_NAMES[color]
    return f"color{color}"


def color_id(name: str) -> ColorId:
    """Resolve a color name to its canonical id (``color<N>`` for extras)."""
    key = name.strip().lower()
    if key in COLOR_NAMES:
        return COLOR_NAMES.index(key)
    if key.startswith("color") and key[5:].isdigit():
        value = int(key[5:])
        if value < MAX_PALETTE:
            return value
    raise UnknownColorName(name)


@dataclass(frozen=True)
class Palette:
    """Display characters for color names, as written in a grid file header."""

    entries: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        chars = [char for char, _name in self.entries]
        if len(chars) != len(set(chars)):
            raise ValueError("Palette characters must be unique.")
        if EMPTY_CHAR in chars:
            raise ValueError(f"{EMPTY_CHAR!r} is reserved for empty cells.")
        if COMMENT_CHAR in chars:
            raise ValueError(f"{COMMENT_CHAR!r} starts a comment line.")
        if len(chars) > MAX_PALETTE:
            raise ValueError(f"A palette holds at most {MAX_PALETTE} colors.")
        if any(len(char) != 1 or char.isspace() for char in chars):
            raise ValueError("Palette characters must be single visible characters.")

    def char_to_color(self) -> dict[str, ColorId]:
        return {char: color_id(name) for char, name in self.entries}

    def color_to_char(self) -> dict[ColorId, str]:
        return {color_id(name): char for char, name in self.entries}


DEFAULT_PALETTE = Palette(
    (
        ("g", "gray"),
        ("k", "black"),
        ("r", "red"),
        ("G", "green"),
        ("b", "blue"),
        ("p", "purple"),
        ("o", "orange"),
    )
)


def components(cells: Iterable[tuple[int, int]]) -> list[set[Cell]]:
    """Split a cell set into its 4-connected components (depth-first)."""
    remaining = {Cell(*c) for c in cells}
    parts: list[set[Cell]] = []
    while remaining:
        seed = min(remaining, key=lambda c: (c.y, c.x))
        remaining.discard(seed)
        stack = [seed]
        part = {seed}
        while stack:
            x, y = stack.pop()
            for ddx, ddy in NEIGHBOURS:
                nxt = Cell(x + ddx, y + ddy)
                if nxt in remaining:
                    remaining.discard(nxt)
                    part.add(nxt)
                    stack.append(nxt)
        parts.append(part)
    return parts


def is_connected(cells: Iterable[tuple[int, int]]) -> bool:
    return len(components(cells)) == 1


class Polyomino:
    """A nonempty, 4-connected, normalized map from cells to colors.

    Instances are immutable and hashable; two polyominoes are equal when
    they have the same cells with the same colors.
    """

    __slots__ = ("_cells", "_hash", "width", "height")

    def __init__(self, cells: CellCluster) -> None:
        if not cells:
            raise EmptyCluster()
        data = {Cell(*cell): int(color) for cell, color in cells.items()}
        min_x = min(c.x for c in data)
        min_y = min(c.y for c in data)
        if min_x != 0 or min_y != 0:
            raise ValueError(
                f"Polyomino cells must be normalized, bounding box starts at "
                f"({min_x}, {min_y}); use normalize()."
            )
        parts = components(data)
        if len(parts) != 1:
            raise DisconnectedCluster(len(parts))
        for color in data.values():
            if not 0 <= color < MAX_PALETTE:
                raise ValueError(f"Color id {color} is outside the palette.")
        self._cells: Mapping[Cell, ColorId] = MappingProxyType(data)
        self._hash = hash(frozenset(data.items()))
        self.width = 1 + max(c.x for c in data)
        self.height = 1 + max(c.y for c in data)

    @property
    def cells(self) -> Mapping[Cell, ColorId]:
        return self._cells

    @property
    def size(self) -> int:
        return len(self._cells)

    @property
    def bbox(self) -> tuple[int, int]:
        return (self.width, self.height)

    @property
    def colors(self) -> set[ColorId]:
        return set(self._cells.values())

    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self._cells)

    def __contains__(self, cell: object) -> bool:
        return cell in self._cells

    def __getitem__(self, cell: tuple[int, int]) -> ColorId:
        return self._cells[Cell(*cell)]

    def get(self, cell: tuple[int, int]) -> ColorId | None:
        return self._cells.get(Cell(*cell))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polyomino):
            return NotImplemented
        return self._hash == other._hash and dict(self._cells) == dict(other._cells)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Polyomino(size={self.size}, bbox={self.width}x{self.height})"

    @classmethod
    def filled(cls, width: int, height: int, color: ColorId = GRAY) -> Polyomino:
        """A solid ``width`` × ``height`` rectangle of one color."""
        return cls({Cell(x, y): color for x in range(width) for y in range(height)})


def normalize(cluster: CellCluster) -> tuple[Polyomino, Offset]:
    """Translate ``cluster`` so its bounding box corner sits at (0, 0).

    Returns the polyomino and the offset that was applied.
    """
    if not cluster:
        raise EmptyCluster()
    min_x = min(c[0] for c in cluster)
    min_y = min(c[1] for c in cluster)
    shift = Offset(-min_x, -min_y)
    shifted = {Cell(x + shift.dx, y + shift.dy): color for (x, y), color in cluster.items()}
    return Polyomino(shifted), shift
