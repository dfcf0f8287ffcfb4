"""Independent references the reductions are checked against.

Both searches are deterministic and return the lexicographically least
witness among the optimal ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from superpoly.errors import TooLarge, TooManyVertices
from superpoly.reductions.coloring import Graph
from superpoly.reductions.setcover import SetCoverInstance

CHROMATIC_LIMIT = 10
COVER_LIMIT = 20


@dataclass(frozen=True)
class ColoringWitness:
    classes: tuple[frozenset[int], ...]

    @property
    def k(self) -> int:
        return len(self.classes)

    def color_of(self, v: int) -> int:
        return next(c for c, members in enumerate(self.classes) if v in members)


@dataclass(frozen=True)
class CoverWitness:
    sets: tuple[int, ...]  # 1-based, sorted

    @property
    def k(self) -> int:
        return len(self.sets)


def chromatic_number(g: Graph) -> ColoringWitness:
    """Minimum proper coloring by backtracking over vertices 0, 1, 2, …"""
    if g.n > CHROMATIC_LIMIT:
        raise TooManyVertices(g.n, CHROMATIC_LIMIT)
    if g.n == 0:
        return ColoringWitness(())
    greedy = nx.greedy_color(g.to_networkx(), strategy="largest_first")
    upper = max(greedy.values()) + 1
    neighbours = [g.neighbours(v) for v in range(g.n)]
    colors = [-1] * g.n

    def assign(v: int, k: int, used: int) -> bool:
        if v == g.n:
            return True
        # a new color only ever gets the next free index
        for c in range(min(used + 1, k)):
            if all(colors[u] != c for u in neighbours[v]):
                colors[v] = c
                if assign(v + 1, k, max(used, c + 1)):
                    return True
                colors[v] = -1
        return False

    for k in range(1, upper + 1):
        if assign(0, k, 0):
            break
    classes = tuple(
        frozenset(v for v in range(g.n) if colors[v] == c) for c in range(max(colors) + 1)
    )
    return ColoringWitness(classes)


def min_set_cover(sc: SetCoverInstance) -> CoverWitness:
    """Minimum cover by branching on the lowest uncovered element."""
    if sc.m > COVER_LIMIT:
        raise TooLarge("m", sc.m, COVER_LIMIT)
    containing = {e: [j for j in range(1, sc.m + 1) if e in sc.members(j)] for e in sc.universe}
    best: list[tuple[int, ...]] = [tuple(range(1, sc.m + 1))]

    def branch(chosen: list[int], covered: frozenset[int]) -> None:
        if len(covered) == sc.n:
            candidate = tuple(sorted(chosen))
            if len(candidate) < len(best[0]) or (
                len(candidate) == len(best[0]) and candidate < best[0]
            ):
                best[0] = candidate
            return
        if len(chosen) + 1 > len(best[0]):
            return
        e = min(set(sc.universe) - covered)
        for j in containing[e]:
            if j in chosen:
                continue
            chosen.append(j)
            branch(chosen, covered | sc.members(j))
            chosen.pop()

    branch([], frozenset())
    return CoverWitness(best[0])


def vertex_poly_size(nv: int, degree: int) -> int:
    return 2 * nv * nv - (nv - 1 - degree)


def element_poly_size(n: int) -> int:
    return n * n + 5 * n + 1


def set_poly_size(sc: SetCoverInstance) -> int:
    n, m = sc.n, sc.m
    return m * (n * n + 4 * n) + n * sum(len(s) for s in sc.sets) + (m - 1)
