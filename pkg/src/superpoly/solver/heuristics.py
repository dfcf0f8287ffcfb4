"""Greedy pairwise merging, subshape filtering and the one-color row case."""

from __future__ import annotations

import logging
import time

from superpoly.errors import PreconditionViolated
from superpoly.geometry.models import ORIGIN, Offset, Polyomino, normalize
from superpoly.geometry.relations import is_superpolyomino, max_overlap, superimpose
from superpoly.solver.instance import Instance, Layout
from superpoly.solver.models import SearchStats, SolveResult

logger = logging.getLogger(__name__)


def solve_greedy(inst: Instance) -> SolveResult:
    """Merge the pair with the largest overlap until one piece remains.

    Ties go to the smallest (i, j) pair of current pieces, then to the
    smallest (dy, dx) offset.
    """
    started = time.perf_counter()
    clusters: list[tuple[Polyomino, dict[int, Offset]]] = [
        (poly, {index: ORIGIN}) for index, poly in enumerate(inst)
    ]
    merges = 0
    while len(clusters) > 1:
        best: tuple[int, int, int, Offset] | None = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                offset, count = max_overlap(clusters[i][0], clusters[j][0])
                if best is None or count > best[0]:
                    best = (count, i, j, offset)
        assert best is not None
        count, i, j, offset = best
        (pu, members_u), (pv, members_v) = clusters[i], clusters[j]
        merged, shift = normalize(superimpose(pu, pv, offset))
        members = {k: o + shift for k, o in members_u.items()}
        members.update({k: o + offset + shift for k, o in members_v.items()})
        clusters[i] = (merged, members)
        del clusters[j]
        merges += 1
        logger.debug("greedy merge %d+%d at %s, overlap %d", i, j, tuple(offset), count)

    final, members = clusters[0]
    layout = Layout(tuple(members[k] for k in range(len(inst)))).anchored(0)
    lower_bound = max(p.size for p in inst)
    stats = SearchStats(nodes=merges, elapsed=time.perf_counter() - started)
    stats.incumbents.append((merges, final.size))
    logger.info("greedy: size=%d after %d merges", final.size, merges)
    return SolveResult(layout, final.size, final.size == lower_bound, stats)


def subshape_map(inst: Instance) -> tuple[list[int], dict[int, tuple[int, Offset]]]:
    """Indices of the pieces that survive subshape filtering, plus, for every
    removed piece, a surviving piece that contains it and the embedding offset.
    """
    polys = inst.polyominoes
    kept: list[int] = []
    for i, p in enumerate(polys):
        dominated = False
        for j, q in enumerate(polys):
            if j == i or q.size < p.size:
                continue
            # equal size + embeddable means identical: keep the first copy
            if (q.size > p.size or j < i) and is_superpolyomino(q, p):
                dominated = True
                break
        if not dominated:
            kept.append(i)

    removed: dict[int, tuple[int, Offset]] = {}
    for i, p in enumerate(polys):
        if i in kept:
            continue
        for k in kept:
            embeddings = is_superpolyomino(polys[k], p)
            if embeddings:
                removed[i] = (k, embeddings[0])
                break
    return kept, removed


def subshape_filter(inst: Instance) -> Instance:
    """Drop every piece that is a subshape of another remaining piece."""
    kept, _removed = subshape_map(inst)
    return Instance(tuple(inst.pieces[i] for i in kept), inst.provenance)


def expand_layout(
    inst: Instance, kept: list[int], removed: dict[int, tuple[int, Offset]], sub: Layout
) -> Layout:
    """Lift a layout of the filtered instance back to every original piece."""
    offsets: dict[int, Offset] = dict(zip(kept, sub))
    for i, (k, embedding) in removed.items():
        offsets[i] = offsets[k] + embedding
    return Layout(tuple(offsets[i] for i in range(len(inst))))


def solve_line_single_color(inst: Instance) -> SolveResult:
    """One-color 1×k rows: the longest row contains all others."""
    started = time.perf_counter()
    color = None
    longest = 0
    for name, poly in inst.pieces:
        if poly.height != 1 or len(poly.colors) != 1:
            raise PreconditionViolated(f"Piece {name!r} is not a single-color row.")
        (piece_color,) = poly.colors
        if color is None:
            color = piece_color
        elif piece_color != color:
            raise PreconditionViolated(f"Piece {name!r} uses a different color.")
        longest = max(longest, poly.width)
    stats = SearchStats(nodes=len(inst), elapsed=time.perf_counter() - started)
    stats.incumbents.append((len(inst), longest))
    return SolveResult(Layout(tuple(ORIGIN for _ in range(len(inst)))), longest, True, stats)
