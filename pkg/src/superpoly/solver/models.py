from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum

from superpoly.errors import InvalidSolverConfig, SolveTimeout
from superpoly.solver.instance import Instance, Layout


class SolverMode(StrEnum):
    EXACT_CONTACT = "exact-contact"
    EXACT_STEINER = "exact-steiner"
    GREEDY = "greedy"
    BRUTE = "brute"


def default_window(inst: Instance) -> int:
    """Sum over pieces of max(width, height): wide enough for any connected layout."""
    return sum(max(p.width, p.height) for p in inst)


@dataclass(frozen=True)
class SolverConfig:
    mode: SolverMode = SolverMode.EXACT_CONTACT
    window: int | None = None  # None: default_window(instance)
    time_limit: float | None = None  # seconds
    workers: int = 1
    filter_subshapes: bool = True

    def window_for(self, inst: Instance) -> int:
        window = default_window(inst) if self.window is None else self.window
        largest = max(max(p.width, p.height) for p in inst)
        if window < largest:
            raise InvalidSolverConfig(
                f"Window {window} is smaller than the largest piece dimension {largest}."
            )
        return window

    def validate(self) -> None:
        if self.workers < 1:
            raise InvalidSolverConfig("Worker count must be at least 1.")
        if self.time_limit is not None and self.time_limit <= 0:
            raise InvalidSolverConfig("Time limit must be positive.")


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed: float = 0.0
    # (nodes expanded when found, size) for every improvement of the incumbent
    incumbents: list[tuple[int, int]] = field(default_factory=list)
    timed_out: bool = False
    # empty cells added to join a disconnected union (steiner mode only)
    helper_cells: int = 0


@dataclass
class SolveResult:
    layout: Layout
    size: int
    optimal: bool
    stats: SearchStats = field(default_factory=SearchStats)

    def raise_for_timeout(self) -> None:
        if self.stats.timed_out:
            raise SolveTimeout(self)
