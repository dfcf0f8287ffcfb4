"""Shared fixtures: seeded random polyominoes and small instances."""

import random
from collections.abc import Callable

import pytest

from superpoly.geometry.models import NEIGHBOURS, Cell, Polyomino, normalize
from superpoly.solver.instance import Instance

PolyFactory = Callable[..., Polyomino]


def grow_polyomino(rng: random.Random, cells: int, colors: int = 2) -> Polyomino:
    """Random connected polyomino grown cell by cell from the origin."""
    shape = {Cell(0, 0)}
    while len(shape) < cells:
        x, y = rng.choice(sorted(shape))
        dx, dy = rng.choice(NEIGHBOURS)
        shape.add(Cell(x + dx, y + dy))
    poly, _shift = normalize({c: rng.randrange(colors) for c in sorted(shape)})
    return poly


def random_instance(rng: random.Random, pieces: int, max_cells: int, colors: int) -> Instance:
    return Instance.of(
        [grow_polyomino(rng, rng.randint(1, max_cells), colors) for _ in range(pieces)]
    )


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(1998)


@pytest.fixture()
def make_polyomino() -> PolyFactory:
    return grow_polyomino


@pytest.fixture()
def make_instance() -> Callable[..., Instance]:
    return random_instance
