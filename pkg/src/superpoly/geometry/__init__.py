from superpoly.geometry.gridtext import emit_polyomino, parse_polyomino
from superpoly.geometry.models import (
    DEFAULT_PALETTE,
    ORIGIN,
    Cell,
    CellCluster,
    ColorId,
    Offset,
    Palette,
    Polyomino,
    normalize,
)
from superpoly.geometry.relations import (
    compatible,
    is_superpolyomino,
    max_overlap,
    superimpose,
    translate,
)

__all__ = [
    "DEFAULT_PALETTE",
    "ORIGIN",
    "Cell",
    "CellCluster",
    "ColorId",
    "Offset",
    "Palette",
    "Polyomino",
    "compatible",
    "emit_polyomino",
    "is_superpolyomino",
    "max_overlap",
    "normalize",
    "parse_polyomino",
    "superimpose",
    "translate",
]
