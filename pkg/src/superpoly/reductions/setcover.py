"""Set cover → smallest one-color superpolyomino.

Element i becomes a flag: an (n+1)×(n+1) base, a one-wide pole from
y = n to y = 3n, and an n-wide flag at height n + 2i.  The set polyomino
``Pbar`` lays one gadget per set side by side: a base with cell (1, 1)
punched out, a pole, and one flag per member.  Parking element i on the
gadget of a set containing it only fills the puncture, so the cheapest
superpolyomino costs |Pbar| + (size of a minimum cover).
"""

from __future__ import annotations

import itertools
import logging
import random
import time
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from superpoly.errors import (
    ElementOutOfRange,
    InvalidSetCover,
    MisalignedElement,
    NotRulesAbiding,
    PreconditionViolated,
    TooLarge,
    WrongSet,
)
from superpoly.geometry.models import GRAY, ORIGIN, Cell, ColorId, Offset, Polyomino
from superpoly.solver.evaluate import evaluate_layout
from superpoly.solver.instance import Instance, Layout
from superpoly.solver.models import SearchStats, SolveResult

logger = logging.getLogger(__name__)

KIND = "setcover"
SET_PIECE = "Pbar"
ALIGNED_LIMIT = 12


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe 1..n and sets S1..Sm (stored 0-based in ``sets``)."""

    n: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        if self.n < 2:
            raise InvalidSetCover(f"The universe needs at least 2 elements, got {self.n}.")
        if not self.sets:
            raise InvalidSetCover("At least one set is required.")
        for s in self.sets:
            for e in s:
                if not 1 <= e <= self.n:
                    raise ElementOutOfRange(e, self.n)
        missing = set(self.universe) - set().union(*self.sets)
        if missing:
            raise InvalidSetCover(f"Elements {sorted(missing)} are in no set.")

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def universe(self) -> range:
        return range(1, self.n + 1)

    def members(self, j: int) -> frozenset[int]:
        """Elements of set S_j (1-based)."""
        return self.sets[j - 1]

    def covers(self, chosen: Iterable[int]) -> bool:
        covered: set[int] = set()
        for j in chosen:
            covered |= self.members(j)
        return len(covered) == self.n

    @property
    def sets_text(self) -> str:
        return ";".join(",".join(str(e) for e in sorted(s)) for s in self.sets)


def sample_set_cover() -> SetCoverInstance:
    """The four-set example {{1,2},{1,4},{2,3,4},{2,4}} over 1..4."""
    return SetCoverInstance(4, (frozenset({1, 2}), frozenset({1, 4}), frozenset({2, 3, 4}), frozenset({2, 4})))


def random_set_cover(n: int, m: int, seed: int | None = None) -> SetCoverInstance:
    """Random nonempty sets; uncovered elements are dropped into a random set."""
    rng = random.Random(seed)
    sets: list[set[int]] = []
    for _ in range(m):
        size = rng.randint(1, n)
        sets.append(set(rng.sample(range(1, n + 1), size)))
    for e in range(1, n + 1):
        if not any(e in s for s in sets):
            sets[rng.randrange(m)].add(e)
    return SetCoverInstance(n, tuple(frozenset(s) for s in sets))


# ---------------------------------------------------------------------------
# Gadgets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ElementPolyomino:
    element: int
    polyomino: Polyomino


@dataclass(frozen=True)
class SetPolyomino:
    polyomino: Polyomino
    origins: tuple[int, ...]  # base x of gadget j at index j - 1
    punctures: tuple[Cell, ...]
    flag_rows: tuple[frozenset[int], ...]
    connectors: tuple[Cell, ...] = field(default=())


def gadget_origin(n: int, j: int) -> int:
    return (n + 2) * (j - 1)


def _base(x0: int, n: int) -> set[Cell]:
    return {Cell(x0 + x, y) for x in range(n + 1) for y in range(n + 1)}


def _pole(x0: int, n: int) -> set[Cell]:
    return {Cell(x0, y) for y in range(n, 3 * n + 1)}


def _flag(x0: int, n: int, e: int) -> set[Cell]:
    return {Cell(x0 + x, n + 2 * e) for x in range(1, n + 1)}


def build_element_polyomino(n: int, i: int) -> ElementPolyomino:
    if n < 2:
        raise InvalidSetCover(f"The universe needs at least 2 elements, got {n}.")
    if not 1 <= i <= n:
        raise ElementOutOfRange(i, n)
    cells = _base(0, n) | _pole(0, n) | _flag(0, n, i)
    return ElementPolyomino(i, Polyomino(dict.fromkeys(cells, GRAY)))


def build_set_polyomino(sc: SetCoverInstance) -> SetPolyomino:
    n = sc.n
    cells: set[Cell] = set()
    origins, punctures, rows = [], [], []
    for j in range(1, sc.m + 1):
        x0 = gadget_origin(n, j)
        puncture = Cell(x0 + 1, 1)
        cells |= _base(x0, n) - {puncture}
        cells |= _pole(x0, n)
        for e in sc.members(j):
            cells |= _flag(x0, n, e)
        origins.append(x0)
        punctures.append(puncture)
        rows.append(frozenset(n + 2 * e for e in sc.members(j)))
    connectors = tuple(Cell((n + 2) * j - 1, 0) for j in range(1, sc.m))
    cells |= set(connectors)
    logger.debug("set polyomino: n=%d m=%d size=%d", n, sc.m, len(cells))
    return SetPolyomino(
        Polyomino(dict.fromkeys(cells, GRAY)),
        tuple(origins),
        tuple(punctures),
        tuple(rows),
        connectors,
    )


def setcover_provenance(sc: SetCoverInstance) -> dict[str, str]:
    return {"kind": KIND, "n": str(sc.n), "m": str(sc.m), "sets": sc.sets_text}


def build_instance(sc: SetCoverInstance) -> Instance:
    """``Pbar`` first, then elements ``P1 … Pn``."""
    pieces: list[tuple[str, Polyomino]] = [(SET_PIECE, build_set_polyomino(sc).polyomino)]
    for i in sc.universe:
        pieces.append((f"P{i}", build_element_polyomino(sc.n, i).polyomino))
    return Instance(tuple(pieces), setcover_provenance(sc))


def setcover_from_provenance(provenance: Mapping[str, str]) -> SetCoverInstance:
    if provenance.get("kind") != KIND:
        raise PreconditionViolated("Instance was not generated by the set-cover reduction.")
    try:
        n = int(provenance["n"])
        m = int(provenance["m"])
        sets = tuple(
            frozenset(int(e) for e in chunk.split(",") if e)
            for chunk in provenance["sets"].split(";")
        )
    except (KeyError, ValueError) as e:
        raise PreconditionViolated(f"Unreadable set-cover header: {e}") from e
    if len(sets) != m:
        raise PreconditionViolated(f"Header says m={m} but lists {len(sets)} sets.")
    return SetCoverInstance(n, sets)


# ---------------------------------------------------------------------------
# Aligned layouts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlignmentAssignment:
    """Element → set index (1-based) whose gadget the element is parked on."""

    mapping: Mapping[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", dict(self.mapping))

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.mapping.values())

    def check(self, sc: SetCoverInstance) -> None:
        if sorted(self.mapping) != list(sc.universe):
            raise InvalidSetCover(f"Assignment must map every element 1..{sc.n}.")
        for element, j in sorted(self.mapping.items()):
            if not 1 <= j <= sc.m or element not in sc.members(j):
                raise NotRulesAbiding(element, j)


def aligned_layout(sc: SetCoverInstance, assignment: AlignmentAssignment) -> Layout:
    assignment.check(sc)
    offsets = [ORIGIN]
    for i in sc.universe:
        offsets.append(Offset(gadget_origin(sc.n, assignment.mapping[i]), 0))
    return Layout(tuple(offsets))


def aligned_solve(sc: SetCoverInstance) -> tuple[SolveResult, frozenset[int]]:
    """Fewest patched punctures over rules-abiding assignments.

    Covers are tried by increasing size, lexicographically within a size;
    each element goes to the first chosen set containing it.
    """
    if sc.n > ALIGNED_LIMIT:
        raise TooLarge("n", sc.n, ALIGNED_LIMIT)
    if sc.m > ALIGNED_LIMIT:
        raise TooLarge("m", sc.m, ALIGNED_LIMIT)
    started = time.perf_counter()
    stats = SearchStats()
    inst = build_instance(sc)
    for k in range(1, sc.m + 1):
        for chosen in itertools.combinations(range(1, sc.m + 1), k):
            stats.nodes += 1
            if not sc.covers(chosen):
                continue
            mapping = {i: next(j for j in chosen if i in sc.members(j)) for i in sc.universe}
            layout = aligned_layout(sc, AlignmentAssignment(mapping))
            size = evaluate_layout(inst, layout)
            stats.incumbents.append((stats.nodes, size))
            stats.elapsed = time.perf_counter() - started
            logger.info("aligned solve: size=%d cover=%s", size, list(chosen))
            return SolveResult(layout, size, True, stats), frozenset(chosen)
    raise AssertionError("a valid set-cover instance always has a cover")


def extract_cover(sc: SetCoverInstance, lay: Layout) -> frozenset[int]:
    """Indices of the gadgets whose punctures the element bases patch."""
    if len(lay) != sc.n + 1:
        raise PreconditionViolated(f"Layout has {len(lay)} offsets, expected {sc.n + 1}.")
    origin = lay[0]
    stride = sc.n + 2
    patched: set[int] = set()
    for i in sc.universe:
        rel = lay[i] + (-origin)
        if rel.dy != 0 or rel.dx < 0 or rel.dx % stride or rel.dx // stride >= sc.m:
            raise MisalignedElement(i, rel)
        j = rel.dx // stride + 1
        if i not in sc.members(j):
            raise WrongSet(i, j)
        patched.add(j)
    return frozenset(patched)


# ---------------------------------------------------------------------------
# Misalignment audit
# ---------------------------------------------------------------------------


def _union_size(base: Mapping[Cell, ColorId], piece: Iterable[tuple[int, int]], o: Offset) -> int:
    dx, dy = o
    return len(base) + sum(1 for x, y in piece if (x + dx, y + dy) not in base)


def misalignment_size(sc: SetCoverInstance, i: int, offset: Offset) -> int:
    """Cells in Pbar at (0, 0) plus element i at ``offset``; connectivity ignored."""
    pbar = build_set_polyomino(sc).polyomino
    element = build_element_polyomino(sc.n, i).polyomino
    return _union_size(pbar.cells, element.cells, Offset(*offset))


def is_rules_abiding(sc: SetCoverInstance, i: int, offset: Offset) -> bool:
    dx, dy = offset
    return dy == 0 and any(
        dx == gadget_origin(sc.n, j) for j in range(1, sc.m + 1) if i in sc.members(j)
    )


@dataclass(frozen=True)
class AuditReport:
    bound: int
    min_cheat_size: int
    worst_element: int
    worst_offset: Offset
    holds: bool
    placements: int = 0


def misalignment_audit(sc: SetCoverInstance, element: int | None = None) -> AuditReport:
    """Sweep every placement of single elements that is not rules-abiding.

    Offsets range over [-(3n+2), (n+2)m + 3n]² in both axes; the smallest
    union found must reach |Pbar| + n.
    """
    pbar = build_set_polyomino(sc).polyomino
    elements = [element] if element is not None else list(sc.universe)
    low, high = -(3 * sc.n + 2), (sc.n + 2) * sc.m + 3 * sc.n
    bound = pbar.size + sc.n
    best: tuple[int, int, Offset] | None = None
    placements = 0
    for i in elements:
        cells = list(build_element_polyomino(sc.n, i).polyomino.cells)
        for dy in range(low, high + 1):
            for dx in range(low, high + 1):
                o = Offset(dx, dy)
                if is_rules_abiding(sc, i, o):
                    continue
                placements += 1
                size = _union_size(pbar.cells, cells, o)
                if best is None or size < best[0]:
                    best = (size, i, o)
    assert best is not None
    size, worst_element, worst_offset = best
    if sc.n <= sc.m:
        logger.info("audit with n <= m (n=%d m=%d): cheat minimum %d vs bound %d",
                    sc.n, sc.m, size, bound)
    return AuditReport(bound, size, worst_element, worst_offset, size >= bound, placements)
