"""Exact smallest-superpolyomino search.

Two exact modes share one depth-first branch-and-bound:

* contact: each step places some unplaced piece where it overlaps or
  edge-touches the union placed so far, so every leaf is connected without
  helper cells;
* steiner: pieces are placed in a fixed order anywhere inside the window;
  a disconnected leaf pays for the cheapest set of helper cells joining it.

Among layouts of minimum size the reported one is the lexicographically
least offset vector (pieces in instance order, offsets compared as
(dy, dx)) with the anchor piece at (0, 0).  Parallel workers split the
first branching level and share a monotone incumbent; the final answer is
independent of interleaving and worker count.

Contact mode remembers each partial placement it has expanded so that the
same set of placed pieces reached in another order is searched once.  That
set lives for the whole search and is capped at ``_VISITED_LIMIT`` entries;
beyond the cap memory stays flat and only the deduplication is lost.

``solve_brute`` is the exhaustive oracle the exact search is checked against.
"""

from __future__ import annotations

import heapq
import logging
import threading
import time
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from superpoly.errors import (
    InvalidSolverConfig,
    NoValidLayout,
    SearchSpaceTooLarge,
)
from superpoly.geometry.models import (
    NEIGHBOURS,
    ORIGIN,
    Cell,
    ColorId,
    Offset,
    components,
)
from superpoly.geometry.relations import contact_offsets
from superpoly.solver.heuristics import expand_layout, solve_greedy, subshape_map
from superpoly.solver.instance import Instance, Layout
from superpoly.solver.models import (
    SearchStats,
    SolveResult,
    SolverConfig,
    SolverMode,
)

logger = logging.getLogger(__name__)

BRUTE_LIMIT = 10**8
_CLOCK_EVERY = 256
# Cap on remembered partial placements (see module docstring).
_VISITED_LIMIT = 2_000_000

_Key = tuple[tuple[int, int], ...]


class _Deadline(Exception):
    pass


# ---------------------------------------------------------------------------
# Helper-cell (Steiner) cost
# ---------------------------------------------------------------------------


def steiner_cost(union: dict[Cell, ColorId]) -> int:
    """Fewest empty cells whose addition makes ``union`` 4-connected.

    Node-weighted Dreyfus-Wagner over the union's bounding box: union
    cells cost 0, empty cells cost 1, each component is one terminal.
    Clamping any connecting tree onto the box never adds cells, so the box
    is enough.
    """
    parts = components(union)
    k = len(parts)
    if k <= 1:
        return 0
    min_x = min(c.x for c in union)
    max_x = max(c.x for c in union)
    min_y = min(c.y for c in union)
    max_y = max(c.y for c in union)

    def cost(cell: tuple[int, int]) -> int:
        return 0 if cell in union else 1

    def relax(start: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
        dist = dict(start)
        heap = [(d, c) for c, d in start.items()]
        heapq.heapify(heap)
        while heap:
            d, (x, y) = heapq.heappop(heap)
            if d > dist.get((x, y), d):
                continue
            for ddx, ddy in NEIGHBOURS:
                nx, ny = x + ddx, y + ddy
                if not (min_x <= nx <= max_x and min_y <= ny <= max_y):
                    continue
                nd = d + cost((nx, ny))
                if nd < dist.get((nx, ny), nd + 1):
                    dist[(nx, ny)] = nd
                    heapq.heappush(heap, (nd, (nx, ny)))
        return dist

    full = (1 << k) - 1
    table: dict[int, dict[tuple[int, int], int]] = {}
    for t, part in enumerate(parts):
        seed = min(part, key=lambda c: (c.y, c.x))
        table[1 << t] = relax({(seed.x, seed.y): 0})
    for mask in sorted(range(1, full + 1), key=lambda m: m.bit_count()):
        if mask.bit_count() < 2:
            continue
        merged: dict[tuple[int, int], int] = {}
        sub = (mask - 1) & mask
        while sub:
            rest = mask ^ sub
            if sub < rest:
                left, right = table[sub], table[rest]
                for cell, value in left.items():
                    if cell in right:
                        total = value + right[cell] - cost(cell)
                        if total < merged.get(cell, total + 1):
                            merged[cell] = total
            sub = (sub - 1) & mask
        table[mask] = relax(merged)
    return min(table[full].values())


# ---------------------------------------------------------------------------
# Branch-and-bound
# ---------------------------------------------------------------------------


@dataclass
class _Shared:
    best_size: int
    best_key: tuple[int, _Key]
    best_offsets: dict[int, Offset]
    best_helpers: int
    deadline: float | None
    lock: threading.Lock = field(default_factory=threading.Lock)
    visited: set[frozenset[tuple[int, Offset]]] = field(default_factory=set)
    nodes: int = 0
    incumbents: list[tuple[int, int]] = field(default_factory=list)
    timed_out: bool = False


@dataclass
class _Node:
    placed: dict[int, Offset]
    union: dict[Cell, ColorId]
    box: tuple[int, int, int, int]  # min_x, min_y, max_x, max_y


class _Search:
    def __init__(self, inst: Instance, mode: SolverMode, window: int, shared: _Shared) -> None:
        self.inst = inst
        self.mode = mode
        self.window = window
        self.shared = shared
        self.cells = [dict(p.cells) for p in inst]
        self.dims = [(p.width, p.height) for p in inst]
        self.sizes = [p.size for p in inst]
        self.order = sorted(range(len(inst)), key=lambda i: (-self.sizes[i], i))
        self.anchor = self.order[0]

    # -- state helpers ------------------------------------------------------

    def root(self) -> _Node:
        w, h = self.dims[self.anchor]
        return _Node({self.anchor: ORIGIN}, dict(self.cells[self.anchor]), (0, 0, w - 1, h - 1))

    def _grown_box(self, node: _Node, index: int, o: Offset) -> tuple[int, int, int, int]:
        w, h = self.dims[index]
        min_x, min_y, max_x, max_y = node.box
        return (
            min(min_x, o.dx),
            min(min_y, o.dy),
            max(max_x, o.dx + w - 1),
            max(max_y, o.dy + h - 1),
        )

    def lower_bound(self, union_size: int, box: tuple[int, int, int, int], placed: dict) -> int:
        min_x, min_y, max_x, max_y = box
        span = (max_x - min_x + 1) + (max_y - min_y + 1) - 1
        unplaced = max((self.sizes[i] for i in range(len(self.sizes)) if i not in placed), default=0)
        return max(union_size, span, unplaced)

    def _fits(self, node: _Node, index: int, o: Offset) -> list[Cell] | None:
        """Cells newly added by placing piece ``index`` at ``o``, or None on a clash."""
        union = node.union
        added: list[Cell] = []
        dx, dy = o
        for (x, y), color in self.cells[index].items():
            cell = Cell(x + dx, y + dy)
            existing = union.get(cell)
            if existing is None:
                added.append(cell)
            elif existing != color:
                return None
        return added

    def children(self, node: _Node) -> Iterator[tuple[int, Offset]]:
        if self.mode is SolverMode.EXACT_CONTACT:
            for index in self.order:
                if index in node.placed:
                    continue
                for o in contact_offsets(node.union, self.cells[index]):
                    if abs(o.dx) <= self.window and abs(o.dy) <= self.window:
                        yield index, o
        else:
            index = next(i for i in self.order if i not in node.placed)
            for dy in range(-self.window, self.window + 1):
                for dx in range(-self.window, self.window + 1):
                    yield index, Offset(dx, dy)

    # -- search -------------------------------------------------------------

    def _tick(self) -> None:
        shared = self.shared
        shared.nodes += 1
        if shared.deadline is not None and shared.nodes % _CLOCK_EVERY == 0:
            if time.perf_counter() > shared.deadline:
                shared.timed_out = True
                raise _Deadline()
        if shared.timed_out:
            raise _Deadline()

    def expand(self, node: _Node, index: int, o: Offset) -> None:
        """Place piece ``index`` at ``o`` under ``node`` and search below it."""
        box = self._grown_box(node, index, o)
        placed_after = {**node.placed, index: o}
        if self.lower_bound(len(node.union), box, placed_after) > self.shared.best_size:
            return
        added = self._fits(node, index, o)
        if added is None:
            return
        if self.lower_bound(len(node.union) + len(added), box, placed_after) > self.shared.best_size:
            return
        if self.mode is SolverMode.EXACT_CONTACT:
            key = frozenset(placed_after.items())
            with self.shared.lock:
                if key in self.shared.visited:
                    return
                if len(self.shared.visited) < _VISITED_LIMIT:
                    self.shared.visited.add(key)
        color_of = self.cells[index]
        for cell in added:
            node.union[cell] = color_of[(cell.x - o.dx, cell.y - o.dy)]
        previous_box = node.box
        node.placed[index] = o
        node.box = box
        try:
            self.dfs(node)
        finally:
            del node.placed[index]
            node.box = previous_box
            for cell in added:
                del node.union[cell]

    def dfs(self, node: _Node) -> None:
        self._tick()
        if len(node.placed) == len(self.sizes):
            self.leaf(node)
            return
        for index, o in self.children(node):
            self.expand(node, index, o)

    def leaf(self, node: _Node) -> None:
        size = len(node.union)
        helpers = 0
        if self.mode is SolverMode.EXACT_STEINER:
            if size + 1 > self.shared.best_size and len(components(node.union)) > 1:
                return
            helpers = steiner_cost(node.union)
            size += helpers
        key = (1 if helpers else 0, tuple(node.placed[i].order_key for i in range(len(self.sizes))))
        shared = self.shared
        with shared.lock:
            if size < shared.best_size or (size == shared.best_size and key < shared.best_key):
                if size < shared.best_size:
                    shared.incumbents.append((shared.nodes, size))
                    logger.debug("incumbent %d after %d nodes", size, shared.nodes)
                shared.best_size = size
                shared.best_key = key
                shared.best_offsets = dict(node.placed)
                shared.best_helpers = helpers

    def run_branch(self, index: int, o: Offset) -> None:
        node = self.root()
        try:
            self.expand(node, index, o)
        except _Deadline:
            pass


def _search(inst: Instance, cfg: SolverConfig, window: int) -> tuple[Layout, int, SearchStats]:
    started = time.perf_counter()
    greedy = solve_greedy(inst)
    anchor = min(range(len(inst)), key=lambda i: (-inst[i].size, i))
    seed = greedy.layout.anchored(anchor)
    shared = _Shared(
        best_size=greedy.size,
        best_key=(0, seed.order_key),
        best_offsets=dict(enumerate(seed)),
        best_helpers=0,
        deadline=None if cfg.time_limit is None else started + cfg.time_limit,
    )
    shared.incumbents.append((0, greedy.size))
    search = _Search(inst, cfg.mode, window, shared)
    root = search.root()

    if len(inst) == 1:
        search.leaf(root)
    else:
        branches = list(search.children(root))
        if cfg.workers == 1:
            for index, o in branches:
                search.run_branch(index, o)
                if shared.timed_out:
                    break
        else:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                list(pool.map(lambda b: search.run_branch(*b), branches))

    stats = SearchStats(
        nodes=shared.nodes,
        elapsed=time.perf_counter() - started,
        incumbents=shared.incumbents,
        timed_out=shared.timed_out,
        helper_cells=shared.best_helpers,
    )
    layout = Layout(tuple(shared.best_offsets[i] for i in range(len(inst))))
    return layout, shared.best_size, stats


def solve_exact(inst: Instance, cfg: SolverConfig | None = None) -> SolveResult:
    """Minimum-size layout in contact (default) or steiner mode.

    On time-out the best layout found so far is returned with
    ``optimal=False`` and ``stats.timed_out`` set.
    """
    cfg = cfg or SolverConfig()
    cfg.validate()
    if cfg.mode not in (SolverMode.EXACT_CONTACT, SolverMode.EXACT_STEINER):
        raise InvalidSolverConfig(f"solve_exact cannot run in {cfg.mode} mode.")
    window = cfg.window_for(inst)
    logger.info("exact search: mode=%s pieces=%d window=%d workers=%d",
                cfg.mode, len(inst), window, cfg.workers)

    if cfg.filter_subshapes:
        kept, removed = subshape_map(inst)
        work = Instance(tuple(inst.pieces[i] for i in kept))
    else:
        kept, removed, work = list(range(len(inst))), {}, inst

    sub_layout, size, stats = _search(work, cfg, window)
    layout = expand_layout(inst, kept, removed, sub_layout)
    optimal = not stats.timed_out
    logger.info("exact search: size=%d optimal=%s nodes=%d elapsed=%.3fs",
                size, optimal, stats.nodes, stats.elapsed)
    return SolveResult(layout, size, optimal, stats)


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def solve_brute(inst: Instance, window: int) -> SolveResult:
    """Try every offset vector with piece 0 at (0, 0) and the rest in [-window, window]²."""
    started = time.perf_counter()
    side = 2 * window + 1
    tuples = side ** (2 * (len(inst) - 1))
    if tuples > BRUTE_LIMIT:
        raise SearchSpaceTooLarge(tuples, BRUTE_LIMIT)
    logger.info("brute force: pieces=%d window=%d offset tuples=%d", len(inst), window, tuples)

    cells = [dict(p.cells) for p in inst]
    union: dict[Cell, ColorId] = dict(cells[0])
    offsets: list[Offset] = [ORIGIN]
    best: list = [None, None]  # size, offsets
    stats = SearchStats()
    span = range(-window, window + 1)

    def place(level: int) -> None:
        stats.nodes += 1
        if best[0] is not None and len(union) >= best[0]:
            return
        if level == len(cells):
            if len(components(union)) == 1:
                best[0], best[1] = len(union), list(offsets)
                stats.incumbents.append((stats.nodes, len(union)))
            return
        piece = cells[level]
        for dy in span:
            for dx in span:
                added: list[Cell] = []
                clash = False
                for (x, y), color in piece.items():
                    cell = Cell(x + dx, y + dy)
                    existing = union.get(cell)
                    if existing is None:
                        added.append(cell)
                    elif existing != color:
                        clash = True
                        break
                if clash:
                    continue
                for cell in added:
                    union[cell] = piece[(cell.x - dx, cell.y - dy)]
                offsets.append(Offset(dx, dy))
                place(level + 1)
                offsets.pop()
                for cell in added:
                    del union[cell]

    place(1)
    stats.elapsed = time.perf_counter() - started
    if best[0] is None:
        raise NoValidLayout(window)
    logger.info("brute force: size=%d over %d nodes", best[0], stats.nodes)
    return SolveResult(Layout(tuple(best[1])), best[0], True, stats)
