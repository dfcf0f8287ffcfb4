"""Exception hierarchy shared by every superpoly module.

All errors derive from :class:`SuperpolyError` so the command line can map
whole families to exit codes without knowing each concrete class.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from superpoly.solver.models import SolveResult


class SuperpolyError(ValueError):
    """Base class for all domain errors."""


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------


class EmptyCluster(SuperpolyError):
    """Raised when a polyomino would have no cells."""

    def __init__(self) -> None:
        super().__init__("A polyomino needs at least one cell.")


class DisconnectedCluster(SuperpolyError):
    """Raised when a cell set is not 4-connected."""

    def __init__(self, components: int) -> None:
        self.components = components
        super().__init__(f"Cells form {components} disconnected components.")


class ColorConflict(SuperpolyError):
    """Raised when two polyominoes disagree on the color of a shared cell."""

    def __init__(self, cell: tuple[int, int], first: int, second: int) -> None:
        self.cell = cell
        self.colors = (first, second)
        super().__init__(
            f"Color conflict at {cell}: color {first} meets color {second}."
        )


class UnknownColorChar(SuperpolyError):
    def __init__(self, char: str, line: int) -> None:
        self.char = char
        self.line = line
        super().__init__(f"Unknown color character {char!r} on line {line}.")


class UnknownColorName(SuperpolyError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Unknown color name {name!r}.")


class FormatError(SuperpolyError):
    """Raised for malformed text files (instances, layouts, graphs, covers)."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


# ---------------------------------------------------------------------------
# Instances, layouts and solvers
# ---------------------------------------------------------------------------


class EmptyInstance(SuperpolyError):
    def __init__(self) -> None:
        super().__init__("An instance needs at least one piece.")


class DuplicatePieceName(SuperpolyError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Piece name {name!r} is used twice.")


class LayoutMismatch(SuperpolyError):
    """Raised when a layout does not fit the instance it is applied to."""


class IncompatiblePair(SuperpolyError):
    def __init__(self, first: int, second: int, cell: tuple[int, int]) -> None:
        self.pair = (first, second)
        self.cell = cell
        super().__init__(
            f"Pieces {first} and {second} disagree on the color of cell {cell}."
        )


class DisconnectedUnion(SuperpolyError):
    def __init__(self, components: int) -> None:
        self.components = components
        super().__init__(f"The placed pieces form {components} separate components.")


class SearchSpaceTooLarge(SuperpolyError):
    def __init__(self, tuples: int, limit: int) -> None:
        self.tuples = tuples
        self.limit = limit
        super().__init__(f"{tuples} offset tuples exceed the limit of {limit}.")


class NoValidLayout(SuperpolyError):
    def __init__(self, window: int) -> None:
        self.window = window
        super().__init__(f"No valid layout exists within window {window}.")


class PreconditionViolated(SuperpolyError):
    """Raised when a specialised solver receives input outside its scope."""


class InvalidSolverConfig(SuperpolyError):
    pass


class SolveTimeout(SuperpolyError):
    """Raised by :meth:`SolveResult.raise_for_timeout`; carries the incumbent."""

    def __init__(self, result: SolveResult) -> None:
        self.result = result
        super().__init__(
            f"Time limit reached; best layout found has size {result.size}."
        )


class TooLarge(SuperpolyError):
    """Raised when an exhaustive routine is asked to go past its size guard."""

    def __init__(self, what: str, value: int, limit: int) -> None:
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what} = {value} exceeds the exhaustive limit {limit}.")


# ---------------------------------------------------------------------------
# Coloring reduction
# ---------------------------------------------------------------------------


class GraphTooSmall(SuperpolyError):
    def __init__(self, n: int) -> None:
        self.n = n
        super().__init__(f"The coloring reduction needs at least 3 vertices, got {n}.")


class NotAPartition(SuperpolyError):
    pass


class PartNotIndependent(SuperpolyError):
    def __init__(self, edge: tuple[int, int]) -> None:
        self.edge = edge
        super().__init__(f"Part contains both endpoints of edge {edge}.")


class TooManyVertices(TooLarge):
    def __init__(self, n: int, limit: int) -> None:
        super().__init__("|V|", n, limit)


class DeckNotIndependent(SuperpolyError):
    def __init__(self, edge: tuple[int, int], offset: Any) -> None:
        self.edge = edge
        self.offset = offset
        super().__init__(
            f"Vertices {edge[0]} and {edge[1]} share offset {tuple(offset)} "
            "but are adjacent."
        )


class PaletteTooLarge(SuperpolyError):
    def __init__(self, color: int, limit: int) -> None:
        self.color = color
        self.limit = limit
        super().__init__(f"Color id {color} does not fit in a {limit}-color macrocell.")


class MalformedMacrocell(SuperpolyError):
    def __init__(self, block: tuple[int, int], reason: str) -> None:
        self.block = block
        self.reason = reason
        super().__init__(f"Macrocell at block {block}: {reason}.")


# ---------------------------------------------------------------------------
# Set-cover reduction
# ---------------------------------------------------------------------------


class InvalidSetCover(SuperpolyError):
    pass


class ElementOutOfRange(SuperpolyError):
    def __init__(self, element: int, n: int) -> None:
        self.element = element
        self.n = n
        super().__init__(f"Element {element} is outside 1..{n}.")


class NotRulesAbiding(SuperpolyError):
    def __init__(self, element: int, set_index: int) -> None:
        self.element = element
        self.set_index = set_index
        super().__init__(f"Element {element} is assigned to S{set_index}, which lacks it.")


class MisalignedElement(SuperpolyError):
    def __init__(self, element: int, offset: Any) -> None:
        self.element = element
        self.offset = offset
        super().__init__(
            f"Element {element} at relative offset {tuple(offset)} is not aligned "
            "with any punctured base."
        )


class WrongSet(SuperpolyError):
    def __init__(self, element: int, set_index: int) -> None:
        self.element = element
        self.set_index = set_index
        super().__init__(f"Element {element} is aligned with S{set_index}, which lacks it.")
