from superpoly.reductions.coloring import ColoringInstance, Deck, Graph
from superpoly.reductions.macrocell import TwoColorCodec, from_two_color, to_two_color
from superpoly.reductions.setcover import AlignmentAssignment, SetCoverInstance

__all__ = [
    "AlignmentAssignment",
    "ColoringInstance",
    "Deck",
    "Graph",
    "SetCoverInstance",
    "TwoColorCodec",
    "from_two_color",
    "to_two_color",
]
