"""Text formats for reduction inputs.

Graph file::

    graph 3
    edge 0 1
    edge 1 2

Set-cover file (elements are 1-based)::

    setcover 4 4
    set 1: 1 2
    set 2: 1 4
    set 3: 2 3 4
    set 4: 2 4
"""

from __future__ import annotations

from pathlib import Path

from superpoly.errors import FormatError, SuperpolyError
from superpoly.reductions.coloring import Graph
from superpoly.reductions.setcover import SetCoverInstance


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    lines = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((line_no, line.split()))
    return lines


def _int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise FormatError(f"expected an integer, got {token!r}", line_no) from e


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines or lines[0][1][0] != "graph" or len(lines[0][1]) != 2:
        raise FormatError("expected 'graph <n>' header", lines[0][0] if lines else None)
    n = _int(lines[0][1][1], lines[0][0])
    edges: list[tuple[int, int]] = []
    for line_no, tokens in lines[1:]:
        if tokens[0] != "edge" or len(tokens) != 3:
            raise FormatError("expected 'edge <u> <v>'", line_no)
        u, v = _int(tokens[1], line_no), _int(tokens[2], line_no)
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge {u}-{v} is not between two of the {n} vertices", line_no)
        edges.append((u, v))
    return Graph(n, frozenset(edges))


def emit_graph(g: Graph) -> str:
    return f"graph {g.n}\n" + "".join(f"edge {u} {v}\n" for u, v in sorted(g.edges))


def parse_setcover(text: str) -> SetCoverInstance:
    lines = _content_lines(text)
    if not lines or lines[0][1][0] != "setcover" or len(lines[0][1]) != 3:
        raise FormatError("expected 'setcover <n> <m>' header", lines[0][0] if lines else None)
    header_no = lines[0][0]
    n, m = _int(lines[0][1][1], header_no), _int(lines[0][1][2], header_no)
    sets: dict[int, frozenset[int]] = {}
    for line_no, tokens in lines[1:]:
        if tokens[0] != "set" or len(tokens) < 2 or not tokens[1].endswith(":"):
            raise FormatError("expected 'set <j>: e1 e2 ...'", line_no)
        j = _int(tokens[1][:-1], line_no)
        if not 1 <= j <= m or j in sets:
            raise FormatError(f"set index {j} is out of range or repeated", line_no)
        sets[j] = frozenset(_int(t, line_no) for t in tokens[2:])
    if sorted(sets) != list(range(1, m + 1)):
        raise FormatError(f"expected sets 1..{m}, got {sorted(sets)}")
    try:
        return SetCoverInstance(n, tuple(sets[j] for j in range(1, m + 1)))
    except SuperpolyError as e:
        raise FormatError(str(e)) from e


def emit_setcover(sc: SetCoverInstance) -> str:
    body = "".join(
        f"set {j}: {' '.join(str(e) for e in sorted(s))}\n" for j, s in enumerate(sc.sets, start=1)
    )
    return f"setcover {sc.n} {sc.m}\n{body}"


def load_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def load_setcover(path: str | Path) -> SetCoverInstance:
    return parse_setcover(Path(path).read_text(encoding="utf-8"))
