"""Grid text format for single polyominoes.

::

    # optional comments
    palette: g=gray k=black r=red
    g.
    gg

The top row is the largest y; ``.`` is an empty cell.  Without a palette
header the default ``g=gray k=black r=red G=green b=blue p=purple o=orange``
applies.
"""

from __future__ import annotations

from collections.abc import Sequence

from superpoly.errors import FormatError, UnknownColorChar
from superpoly.geometry.models import (
    COMMENT_CHAR,
    DEFAULT_PALETTE,
    EMPTY_CHAR,
    MAX_PALETTE,
    Cell,
    ColorId,
    Palette,
    Polyomino,
    color_name,
)

_PALETTE_PREFIX = "palette:"
# Characters handed out to color ids outside the default palette; past the
# ASCII set they continue into Latin Extended-A and -B, which hold no
# whitespace and neither "." nor "#".
_EXTRA_CHARS = "ABCDEFHIJKLMNOPQRSTUVWXYZacdefhijlmnqstuvwxyz0123456789" + "".join(
    chr(code) for code in range(0x100, 0x100 + MAX_PALETTE)
)


def parse_palette(header: str, line_no: int | None = None) -> Palette:
    body = header.strip()[len(_PALETTE_PREFIX):]
    entries: list[tuple[str, str]] = []
    for token in body.split():
        char, sep, name = token.partition("=")
        if not sep or len(char) != 1 or not name:
            raise FormatError(f"bad palette entry {token!r}", line_no)
        entries.append((char, name))
    try:
        return Palette(tuple(entries))
    except ValueError as e:
        raise FormatError(str(e), line_no) from e


def parse_grid_lines(lines: Sequence[str], first_line: int = 1) -> Polyomino:
    """Parse the lines of one grid block (comments and header allowed)."""
    palette = DEFAULT_PALETTE
    rows: list[tuple[int, str]] = []
    for idx, raw in enumerate(lines, start=first_line):
        line = raw.rstrip()
        if not rows and not line.strip():
            continue
        if line.lstrip().startswith(COMMENT_CHAR):
            continue
        if not rows and line.strip().lower().startswith(_PALETTE_PREFIX):
            palette = parse_palette(line, idx)
            continue
        rows.append((idx, line))
    while rows and not rows[-1][1].strip():
        rows.pop()

    lookup = palette.char_to_color()
    cells: dict[Cell, ColorId] = {}
    height = len(rows)
    for row_idx, (line_no, row) in enumerate(rows):
        y = height - 1 - row_idx
        for x, char in enumerate(row):
            if char == EMPTY_CHAR:
                continue
            if char not in lookup:
                raise UnknownColorChar(char, line_no)
            cells[Cell(x, y)] = lookup[char]

    # Leading empty columns or a trailing empty bottom row are tolerated.
    if cells:
        min_x = min(c.x for c in cells)
        min_y = min(c.y for c in cells)
        cells = {Cell(c.x - min_x, c.y - min_y): v for c, v in cells.items()}
    return Polyomino(cells)


def parse_polyomino(text: str) -> Polyomino:
    return parse_grid_lines(text.splitlines())


def _palette_for(p: Polyomino) -> Palette | None:
    extras = sorted(c for c in p.colors if c >= len(DEFAULT_PALETTE.entries))
    if not extras:
        return None
    entries = list(DEFAULT_PALETTE.entries)
    entries.extend(
        (char, color_name(color)) for char, color in zip(_EXTRA_CHARS, extras)
    )
    return Palette(tuple(entries))


def emit_polyomino(p: Polyomino) -> str:
    palette = _palette_for(p)
    lookup = (palette or DEFAULT_PALETTE).color_to_char()
    lines: list[str] = []
    if palette is not None:
        header = " ".join(f"{char}={name}" for char, name in palette.entries)
        lines.append(f"{_PALETTE_PREFIX} {header}")
    for y in range(p.height - 1, -1, -1):
        row = "".join(
            lookup[color] if (color := p.get((x, y))) is not None else EMPTY_CHAR
            for x in range(p.width)
        )
        lines.append(row)
    return "\n".join(lines) + "\n"
