"""Tests for the reference oracles and the reduction input formats."""

from pathlib import Path

import networkx as nx
import pytest

from superpoly.errors import FormatError, TooLarge, TooManyVertices
from superpoly.oracles import (
    chromatic_number,
    element_poly_size,
    min_set_cover,
    set_poly_size,
    vertex_poly_size,
)
from superpoly.reductions.coloring import Graph, random_graph
from superpoly.reductions.formats import (
    emit_graph,
    emit_setcover,
    load_graph,
    load_setcover,
    parse_graph,
    parse_setcover,
)
from superpoly.reductions.setcover import SetCoverInstance, random_set_cover, sample_set_cover

SAMPLE_TEXT = """\
setcover 4 4
set 1: 1 2
set 2: 1 4
set 3: 2 3 4
set 4: 2 4
"""

# ---------------------------------------------------------------------------
# chromatic_number
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("graph", "k"),
    [
        (Graph.empty(3), 1),
        (Graph.complete(3), 3),
        (Graph.complete(5), 5),
        (Graph.cycle(4), 2),
        (Graph.cycle(5), 3),
        (Graph.from_networkx(nx.petersen_graph()), 3),
    ],
)
def test_chromatic_number_of_known_graphs(graph: Graph, k: int) -> None:
    assert chromatic_number(graph).k == k


def test_chromatic_witness_is_proper() -> None:
    for seed in range(20):
        g = random_graph(7, 0.5, seed=seed)
        witness = chromatic_number(g)
        assert all(witness.color_of(u) != witness.color_of(v) for u, v in g.edges)
        assert sorted(v for c in witness.classes for v in c) == list(range(7))


def test_chromatic_number_never_beats_greedy() -> None:
    for seed in range(10):
        g = random_graph(8, 0.4, seed=seed)
        greedy = nx.greedy_color(g.to_networkx(), strategy="largest_first")
        assert chromatic_number(g).k <= max(greedy.values(), default=-1) + 1


def test_chromatic_witness_is_lexicographically_first() -> None:
    # path 0-1-2: vertex 0 and 2 share the first color
    g = Graph(3, frozenset({(0, 1), (1, 2)}))
    assert chromatic_number(g).classes == (frozenset({0, 2}), frozenset({1}))


def test_chromatic_number_guard() -> None:
    with pytest.raises(TooManyVertices):
        chromatic_number(Graph.empty(11))


# ---------------------------------------------------------------------------
# min_set_cover
# ---------------------------------------------------------------------------


def test_min_cover_of_sample_set_cover() -> None:
    assert min_set_cover(sample_set_cover()).sets == (1, 3)


def test_min_cover_prefers_lexicographically_least() -> None:
    sc = SetCoverInstance(2, (frozenset({1}), frozenset({1, 2}), frozenset({1, 2})))
    assert min_set_cover(sc).sets == (2,)


def test_min_cover_covers() -> None:
    for seed in range(20):
        sc = random_set_cover(6, 5, seed=seed)
        witness = min_set_cover(sc)
        assert sc.covers(witness.sets)
        assert witness.k <= sc.m


def test_min_cover_guard() -> None:
    sc = SetCoverInstance(2, tuple(frozenset({1, 2}) for _ in range(21)))
    with pytest.raises(TooLarge):
        min_set_cover(sc)


# ---------------------------------------------------------------------------
# Size formulas
# ---------------------------------------------------------------------------


def test_size_formulas_on_sample_set_cover() -> None:
    assert vertex_poly_size(3, 2) == 18
    assert vertex_poly_size(3, 0) == 16
    assert element_poly_size(4) == 37
    assert set_poly_size(sample_set_cover()) == 167


# ---------------------------------------------------------------------------
# Graph files
# ---------------------------------------------------------------------------


def test_parse_graph() -> None:
    g = parse_graph("# triangle\ngraph 3\nedge 0 1\nedge 1 2  # last\nedge 0 2\n")
    assert g == Graph.complete(3)


def test_emit_graph_sorts_edges() -> None:
    assert emit_graph(Graph(3, frozenset({(1, 2), (0, 1)}))) == "graph 3\nedge 0 1\nedge 1 2\n"


def test_graph_file_round_trip(tmp_path: Path) -> None:
    g = random_graph(6, 0.5, seed=2)
    path = tmp_path / "g.txt"
    path.write_text(emit_graph(g), encoding="utf-8")
    assert load_graph(path) == g


@pytest.mark.parametrize(
    ("text", "line"),
    [
        ("", None),
        ("edges 3\n", 1),
        ("graph three\n", 1),
        ("graph 3\nedge 0 1\nedge 1 1\n", 3),
        ("graph 3\nedge 0 3\n", 2),
        ("graph 3\nvertex 0\n", 2),
    ],
)
def test_parse_graph_errors(text: str, line: int | None) -> None:
    with pytest.raises(FormatError) as info:
        parse_graph(text)
    assert info.value.line == line


# ---------------------------------------------------------------------------
# Set-cover files
# ---------------------------------------------------------------------------


def test_parse_setcover() -> None:
    assert parse_setcover(SAMPLE_TEXT) == sample_set_cover()


def test_emit_setcover() -> None:
    assert emit_setcover(sample_set_cover()) == SAMPLE_TEXT


def test_setcover_file_round_trip(tmp_path: Path) -> None:
    sc = random_set_cover(5, 4, seed=8)
    path = tmp_path / "cover.txt"
    path.write_text(emit_setcover(sc), encoding="utf-8")
    assert load_setcover(path) == sc


def test_parse_setcover_missing_set() -> None:
    with pytest.raises(FormatError):
        parse_setcover("setcover 2 2\nset 1: 1 2\n")


def test_parse_setcover_repeated_index() -> None:
    with pytest.raises(FormatError) as info:
        parse_setcover("setcover 2 2\nset 1: 1\nset 1: 2\n")
    assert info.value.line == 3


def test_parse_setcover_uncovered_element() -> None:
    with pytest.raises(FormatError):
        parse_setcover("setcover 3 1\nset 1: 1 2\n")
