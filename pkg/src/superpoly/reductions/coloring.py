"""Graph coloring → smallest superpolyomino.

Each vertex v becomes a 2|V| × |V| gray rectangle with four colored
corners.  Row y = 1 carries one special cell per vertex i at x = 2i + 1:
black when i = v, red when v and i are adjacent, missing otherwise.  Two
vertex pieces stack at the same offset exactly when the vertices are not
adjacent, so a smallest superpolyomino is a row of decks, one deck per
color class.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import networkx as nx

from superpoly.errors import (
    DeckNotIndependent,
    GraphTooSmall,
    NotAPartition,
    PartNotIndependent,
    PreconditionViolated,
    TooManyVertices,
)
from superpoly.geometry.models import (
    BLACK,
    BLUE,
    GRAY,
    GREEN,
    ORANGE,
    ORIGIN,
    PURPLE,
    RED,
    Cell,
    ColorId,
    Offset,
    Polyomino,
)
from superpoly.reductions.macrocell import TwoColorCodec, from_two_color, to_two_color
from superpoly.solver.evaluate import evaluate_layout, layout_union
from superpoly.solver.instance import Instance, Layout
from superpoly.solver.models import SearchStats, SolveResult

logger = logging.getLogger(__name__)

MIN_VERTICES = 3
DECK_SOLVE_LIMIT = 10
KIND = "coloring"


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1; edges stored as (u, v), u < v."""

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("A graph cannot have a negative vertex count.")
        normalized: set[tuple[int, int]] = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"Self-loop at vertex {u}.")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"Edge ({u}, {v}) leaves the vertex range 0..{self.n - 1}.")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n)

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls(n, frozenset((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> Graph:
        mapping = {node: i for i, node in enumerate(sorted(graph.nodes))}
        return cls(len(mapping), frozenset((mapping[u], mapping[v]) for u, v in graph.edges))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree(self, v: int) -> int:
        return sum(1 for edge in self.edges if v in edge)

    def neighbours(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def first_edge_within(self, vertices: Iterable[int]) -> tuple[int, int] | None:
        """Smallest edge with both endpoints in ``vertices``, if any."""
        members = set(vertices)
        inside = sorted(e for e in self.edges if e[0] in members and e[1] in members)
        return inside[0] if inside else None

    def is_independent(self, vertices: Iterable[int]) -> bool:
        return self.first_edge_within(vertices) is None

    @property
    def edge_text(self) -> str:
        return ",".join(f"{u}-{v}" for u, v in sorted(self.edges))


def graph_census(nv: int) -> Iterator[Graph]:
    """Every labelled graph on ``nv`` vertices, by edge bitmask."""
    pairs = list(itertools.combinations(range(nv), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(nv, frozenset(p for bit, p in enumerate(pairs) if mask >> bit & 1))


def random_graph(nv: int, p: float, seed: int | None = None) -> Graph:
    return Graph.from_networkx(nx.gnp_random_graph(nv, p, seed=seed))


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColoringInstance:
    instance: Instance
    graph: Graph
    two_color: bool = False

    @property
    def scale(self) -> int:
        """Cells of the instance per cell of the plain construction."""
        if not self.two_color:
            return 1
        side = TwoColorCodec().side
        return side * side


def _special_cell(i: int) -> Cell:
    return Cell(2 * i + 1, 1)


def build_vertex_polyomino(g: Graph, v: int) -> Polyomino:
    n = g.n
    if n < MIN_VERTICES:
        raise GraphTooSmall(n)
    cells: dict[Cell, ColorId] = {Cell(x, y): GRAY for x in range(2 * n) for y in range(n)}
    cells[Cell(0, 0)] = GREEN
    cells[Cell(2 * n - 1, 0)] = BLUE
    cells[Cell(0, n - 1)] = PURPLE
    cells[Cell(2 * n - 1, n - 1)] = ORANGE
    for i in range(n):
        cell = _special_cell(i)
        if i == v:
            cells[cell] = BLACK
        elif g.adjacent(v, i):
            cells[cell] = RED
        else:
            del cells[cell]
    return Polyomino(cells)


def coloring_provenance(g: Graph, two_color: bool = False) -> dict[str, str]:
    return {
        "kind": KIND,
        "|V|": str(g.n),
        "edges": g.edge_text,
        "two-color": "yes" if two_color else "no",
    }


def build_instance(g: Graph, two_color: bool = False) -> ColoringInstance:
    """One vertex piece per vertex, named ``v0, v1, …``."""
    if g.n < MIN_VERTICES:
        raise GraphTooSmall(g.n)
    codec = TwoColorCodec()
    pieces = []
    for v in range(g.n):
        poly = build_vertex_polyomino(g, v)
        if two_color:
            poly = to_two_color(poly, codec)
        pieces.append((f"v{v}", poly))
    logger.debug("coloring instance: |V|=%d |E|=%d two_color=%s", g.n, len(g.edges), two_color)
    inst = Instance(tuple(pieces), coloring_provenance(g, two_color))
    return ColoringInstance(inst, g, two_color)


def graph_from_provenance(provenance: dict[str, str]) -> Graph:
    if provenance.get("kind") != KIND:
        raise PreconditionViolated("Instance was not generated by the coloring reduction.")
    try:
        n = int(provenance["|V|"])
        edges = frozenset(
            (int(u), int(v))
            for u, v in (token.split("-") for token in provenance.get("edges", "").split(",") if token)
        )
    except (KeyError, ValueError) as e:
        raise PreconditionViolated(f"Unreadable coloring header: {e}") from e
    return Graph(n, edges)


def coloring_instance(inst: Instance) -> ColoringInstance:
    """Re-attach the graph recorded in an instance's reduction header."""
    g = graph_from_provenance(dict(inst.provenance))
    if len(inst) != g.n:
        raise PreconditionViolated(f"Header says |V|={g.n} but the instance has {len(inst)} pieces.")
    ci = ColoringInstance(inst, g, inst.provenance.get("two-color") == "yes")
    side = TwoColorCodec().side if ci.two_color else 1
    expected = (2 * g.n * side, g.n * side)
    kind = "two-color" if ci.two_color else "plain"
    for v, poly in enumerate(inst):
        if poly.bbox != expected:
            raise PreconditionViolated(
                f"Piece {v} is {poly.width}x{poly.height}; a {kind} header expects "
                f"{expected[0]}x{expected[1]}."
            )
        if ci.two_color and not poly.colors <= {GRAY, BLACK}:
            raise PreconditionViolated(f"Piece {v} uses colors beyond gray and black.")
    return ci


def decode_graph(inst: Instance) -> Graph:
    """Read G back off the black and red special cells of every vertex piece."""
    n = len(inst)
    codec = TwoColorCodec()
    plain: list[Polyomino] = []
    for v, poly in enumerate(inst):
        if poly.colors <= {GRAY, BLACK}:
            poly = from_two_color(poly, codec)
        if poly.bbox != (2 * n, n):
            raise PreconditionViolated(f"Piece {v} is {poly.width}x{poly.height}, not {2 * n}x{n}.")
        if poly.get(_special_cell(v)) != BLACK:
            raise PreconditionViolated(f"Piece {v} lacks its black self marker.")
        plain.append(poly)

    def marked(v: int, i: int) -> bool:
        return plain[v].get(_special_cell(i)) == RED

    edges: set[tuple[int, int]] = set()
    for u, v in itertools.combinations(range(n), 2):
        if marked(u, v) != marked(v, u):
            raise PreconditionViolated(f"Edge {u}-{v} is marked on one side only.")
        if marked(u, v):
            edges.add((u, v))
    return Graph(n, frozenset(edges))


# ---------------------------------------------------------------------------
# Decks
# ---------------------------------------------------------------------------


def _check_partition(g: Graph, partition: Sequence[Iterable[int]]) -> list[list[int]]:
    parts = [sorted(part) for part in partition]
    flat = [v for part in parts for v in part]
    if any(not part for part in parts):
        raise NotAPartition("Partition has an empty part.")
    if sorted(flat) != list(range(g.n)):
        raise NotAPartition(f"Parts do not cover vertices 0..{g.n - 1} exactly once.")
    for part in parts:
        edge = g.first_edge_within(part)
        if edge is not None:
            raise PartNotIndependent(edge)
    return parts


def deck_layout(inst: ColoringInstance, partition: Sequence[Iterable[int]]) -> Layout:
    """Part j is stacked at (j · piece width, 0); decks meet edge to edge."""
    parts = _check_partition(inst.graph, partition)
    stride = inst.instance[0].width
    offsets: list[Offset] = [ORIGIN] * inst.graph.n
    for j, part in enumerate(parts):
        for v in part:
            offsets[v] = Offset(j * stride, 0)
    return Layout(tuple(offsets))


def deck_union(inst: ColoringInstance, part: Iterable[int]) -> Polyomino:
    """The polyomino formed by stacking the pieces of one independent set."""
    members = sorted(part)
    edge = inst.graph.first_edge_within(members)
    if edge is not None:
        raise PartNotIndependent(edge)
    sub = Instance(tuple(inst.instance.pieces[v] for v in members))
    return layout_union(sub, Layout(tuple(ORIGIN for _ in members)))


@dataclass(frozen=True)
class Deck:
    """Pieces of one independent set stacked at a common offset."""

    vertices: frozenset[int]
    union: Polyomino
    offset: Offset

    @property
    def size(self) -> int:
        return self.union.size


def decks(inst: ColoringInstance, partition: Sequence[Iterable[int]]) -> list[Deck]:
    """The decks of ``deck_layout(inst, partition)``, left to right."""
    layout = deck_layout(inst, partition)
    return [
        Deck(frozenset(part), deck_union(inst, part), layout[min(part)])
        for part in _check_partition(inst.graph, partition)
    ]


def deck_size(g: Graph, part: Iterable[int], scale: int = 1) -> int:
    """Closed form: all gray and corner cells plus one special cell per vertex of N[part]."""
    closed = set(part)
    for v in list(closed):
        closed |= g.neighbours(v)
    return scale * (2 * g.n * g.n - g.n + len(closed))


def independent_partitions(g: Graph) -> Iterator[list[list[int]]]:
    """Partitions of V into independent sets, in restricted-growth order."""
    n = g.n
    blocks: list[list[int]] = []

    def extend(v: int) -> Iterator[list[list[int]]]:
        if v == n:
            yield [list(b) for b in blocks]
            return
        for block in blocks:
            if not any(g.adjacent(v, u) for u in block):
                block.append(v)
                yield from extend(v + 1)
                block.pop()
        blocks.append([v])
        yield from extend(v + 1)
        blocks.pop()

    yield from extend(0)


def deck_solve(inst: ColoringInstance) -> SolveResult:
    """Smallest row of decks over every partition into independent sets."""
    g = inst.graph
    if g.n > DECK_SOLVE_LIMIT:
        raise TooManyVertices(g.n, DECK_SOLVE_LIMIT)
    started = time.perf_counter()
    stats = SearchStats()
    best: tuple[int, list[list[int]]] | None = None
    for partition in independent_partitions(g):
        stats.nodes += 1
        size = sum(deck_size(g, part, inst.scale) for part in partition)
        if best is None or size < best[0]:
            best = (size, partition)
            stats.incumbents.append((stats.nodes, size))
    assert best is not None
    layout = deck_layout(inst, best[1])
    size = evaluate_layout(inst.instance, layout)
    if size != best[0]:
        raise PreconditionViolated(
            f"Deck size formula gave {best[0]} but the layout evaluates to {size}; "
            "the pieces do not match the graph."
        )
    stats.elapsed = time.perf_counter() - started
    logger.info("deck solve: size=%d decks=%d partitions=%d", size, len(best[1]), stats.nodes)
    return SolveResult(layout, size, True, stats)


def extract_coloring(inst: ColoringInstance, lay: Layout) -> list[frozenset[int]]:
    """Color classes read off a layout: vertices sharing an offset share a color."""
    groups: dict[Offset, list[int]] = {}
    for v, offset in enumerate(lay):
        groups.setdefault(offset, []).append(v)
    classes = sorted((sorted(vs) for vs in groups.values()), key=lambda vs: vs[0])
    for vs in classes:
        edge = inst.graph.first_edge_within(vs)
        if edge is not None:
            raise DeckNotIndependent(edge, lay[vs[0]])
    return [frozenset(vs) for vs in classes]


def threshold_k(size: int, nv: int, scale: int = 1) -> int:
    """Smallest k with size ≤ 2k·nv² (times ``scale`` cells per plain cell)."""
    per_deck = 2 * scale * nv * nv
    return -(-size // per_deck)
