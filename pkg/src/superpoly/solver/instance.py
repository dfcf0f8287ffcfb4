"""Instances, layouts and their text formats.

Instance file::

    # reduction: coloring |V|=3 edges=0-1,0-2,1-2
    poly v0
    G....o
    ...
    <blank line>
    poly v1
    ...

Layout file: one ``place <piece-name> <dx> <dy>`` line per piece, in
instance order.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from superpoly.errors import (
    DuplicatePieceName,
    EmptyInstance,
    FormatError,
    LayoutMismatch,
)
from superpoly.geometry.gridtext import emit_polyomino, parse_grid_lines
from superpoly.geometry.models import Offset, Polyomino

PROVENANCE_PREFIX = "# reduction:"


@dataclass(frozen=True)
class Instance:
    """A named, ordered collection of pieces to be covered by one superpolyomino."""

    pieces: tuple[tuple[str, Polyomino], ...]
    provenance: Mapping[str, str] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        if not self.pieces:
            raise EmptyInstance()
        seen: set[str] = set()
        for name, _poly in self.pieces:
            if name in seen:
                raise DuplicatePieceName(name)
            seen.add(name)
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "provenance", dict(self.provenance))

    @classmethod
    def of(cls, polys: Sequence[Polyomino], prefix: str = "p") -> Instance:
        """Build an instance with generated names ``p0, p1, …``."""
        return cls(tuple((f"{prefix}{i}", p) for i, p in enumerate(polys)))

    @property
    def names(self) -> list[str]:
        return [name for name, _poly in self.pieces]

    @property
    def polyominoes(self) -> list[Polyomino]:
        return [poly for _name, poly in self.pieces]

    @property
    def total_cells(self) -> int:
        return sum(poly.size for _name, poly in self.pieces)

    @property
    def reduction(self) -> str:
        return self.provenance.get("kind", "")

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self) -> Iterator[Polyomino]:
        return iter(self.polyominoes)

    def __getitem__(self, index: int) -> Polyomino:
        return self.pieces[index][1]


@dataclass(frozen=True)
class Layout:
    """One translation offset per instance piece, indexed by piece position."""

    offsets: tuple[Offset, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "offsets", tuple(Offset(*o) for o in self.offsets)
        )

    def __len__(self) -> int:
        return len(self.offsets)

    def __iter__(self) -> Iterator[Offset]:
        return iter(self.offsets)

    def __getitem__(self, index: int) -> Offset:
        return self.offsets[index]

    @property
    def order_key(self) -> tuple[tuple[int, int], ...]:
        return tuple(o.order_key for o in self.offsets)

    def shifted(self, by: Offset) -> Layout:
        return Layout(tuple(o + by for o in self.offsets))

    def anchored(self, index: int = 0) -> Layout:
        """The same layout translated so piece ``index`` sits at (0, 0)."""
        return self.shifted(-self.offsets[index])


# ---------------------------------------------------------------------------
# Provenance header
# ---------------------------------------------------------------------------


def format_provenance(provenance: Mapping[str, str]) -> str:
    kind = provenance.get("kind", "")
    rest = " ".join(f"{k}={v}" for k, v in provenance.items() if k != "kind")
    return f"{PROVENANCE_PREFIX} {kind} {rest}".rstrip()


def parse_provenance(line: str, line_no: int | None = None) -> dict[str, str]:
    tokens = line[len(PROVENANCE_PREFIX):].split()
    if not tokens:
        raise FormatError("empty reduction header", line_no)
    provenance = {"kind": tokens[0]}
    for token in tokens[1:]:
        key, sep, value = token.partition("=")
        if not sep:
            raise FormatError(f"bad reduction header field {token!r}", line_no)
        provenance[key] = value
    return provenance


# ---------------------------------------------------------------------------
# Instance files
# ---------------------------------------------------------------------------


def parse_instance(text: str) -> Instance:
    provenance: dict[str, str] = {}
    pieces: list[tuple[str, Polyomino]] = []
    name: str | None = None
    block: list[str] = []
    block_start = 0

    def flush() -> None:
        nonlocal name, block
        if name is None:
            return
        pieces.append((name, parse_grid_lines(block, block_start)))
        name, block = None, []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if line.startswith(PROVENANCE_PREFIX):
            provenance.update(parse_provenance(line, line_no))
            continue
        if line.startswith("poly "):
            flush()
            parts = line.split()
            if len(parts) != 2:
                raise FormatError("expected 'poly <name>'", line_no)
            name = parts[1]
            block_start = line_no + 1
            continue
        if name is None:
            if line.strip() and not line.lstrip().startswith("#"):
                raise FormatError("grid rows before any 'poly <name>' line", line_no)
            continue
        if not line.strip() and any(b.strip() for b in block):
            flush()
            continue
        block.append(line)
    flush()
    if not pieces:
        raise EmptyInstance()
    return Instance(tuple(pieces), provenance)


def emit_instance(inst: Instance) -> str:
    chunks: list[str] = []
    if inst.provenance:
        chunks.append(format_provenance(inst.provenance) + "\n")
    for name, poly in inst.pieces:
        chunks.append(f"poly {name}\n{emit_polyomino(poly)}\n")
    return "".join(chunks)


def load_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def save_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(emit_instance(inst), encoding="utf-8")


# ---------------------------------------------------------------------------
# Layout files
# ---------------------------------------------------------------------------


def parse_layout(text: str, inst: Instance) -> Layout:
    offsets: list[Offset] = []
    names: list[str] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "place":
            raise FormatError("expected 'place <piece-name> <dx> <dy>'", line_no)
        try:
            offsets.append(Offset(int(parts[2]), int(parts[3])))
        except ValueError as e:
            raise FormatError("offsets must be integers", line_no) from e
        names.append(parts[1])
    if names != inst.names:
        raise LayoutMismatch(
            f"Layout names {names} do not match instance order {inst.names}."
        )
    return Layout(tuple(offsets))


def emit_layout(inst: Instance, layout: Layout) -> str:
    if len(layout) != len(inst):
        raise LayoutMismatch(
            f"Layout has {len(layout)} offsets for {len(inst)} pieces."
        )
    return "".join(
        f"place {name} {o.dx} {o.dy}\n" for name, o in zip(inst.names, layout)
    )
