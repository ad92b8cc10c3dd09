import pytest
import numpy as np
from caatlas.engine import Grid, neighbour_count, neighbour_counts
from caatlas.errors import ValidationError

BLOCK = "oo\noo"


def test_from_cells_keeps_a_dead_margin():
    grid = Grid.from_cells([(0, 0), (2, 1)], margin=2)
    assert grid.origin == (-2, -2)
    assert grid.width == 7
    assert grid.height == 6
    assert grid.margin() == 2
    assert grid.live_cells() == {(0, 0), (2, 1)}
    assert grid.population == 2


def test_bounding_box():
    grid = Grid.from_cells([(-3, 4), (5, -1), (0, 0)])
    assert grid.bounding_box() == (-3, -1, 5, 4)
    assert Grid.empty(4, 4).bounding_box() is None


def test_text_dump_round_trip():
    text = ".o.\n..o\nooo"
    grid = Grid.from_text(text)
    assert grid.to_text() == text
    assert grid.live_cells() == {(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)}
    assert Grid.empty(3, 3).to_text() == ""


def test_from_text_rejects_unknown_characters():
    with pytest.raises(ValidationError, match="Unexpected character 'x'"):
        Grid.from_text("o.x")


def test_with_margin_grows_only_when_needed():
    grid = Grid.from_text(BLOCK, margin=1)
    assert grid.with_margin(1) is grid
    grown = grid.with_margin(5)
    assert grown.margin() == 5
    assert grown.live_cells() == grid.live_cells()


def test_translated_moves_live_cells():
    grid = Grid.from_text(BLOCK).translated(3, -2)
    assert grid.live_cells() == {(3, -2), (4, -2), (3, -1), (4, -1)}


def test_neighbour_count_examples():
    empty = Grid.empty(5, 5)
    assert neighbour_count(empty, 2, 2) == 0

    full = Grid.from_text("ooo\nooo\nooo")
    assert neighbour_count(full, 1, 1) == 8

    block = Grid.from_text(BLOCK)
    assert neighbour_count(block, 0, 0) == 3
    assert neighbour_count(block, -1, -1) == 1


def test_neighbour_count_outside_region_is_rejected():
    grid = Grid.from_text(BLOCK, margin=1)
    with pytest.raises(ValidationError, match="outside the stored region"):
        neighbour_count(grid, 50, 50)


def test_vectorised_counts_agree_with_single_cell_counts():
    rng = np.random.default_rng(3)
    grid = Grid(np.pad(rng.random((8, 8)) < 0.5, 1), origin=(-1, -1))
    ys, xs = np.mgrid[-1:9, -1:9]
    batch = grid.neighbour_counts_at(xs.ravel(), ys.ravel())
    single = [
        grid.neighbour_count(x, y) for x, y in zip(xs.ravel(), ys.ravel())
    ]
    assert list(batch) == single
    assert np.array_equal(neighbour_counts(grid).ravel(), batch)


def test_grid_equality_ignores_region_size():
    a = Grid.from_text(BLOCK, margin=1)
    b = Grid.from_text(BLOCK, margin=4)
    assert a == b
    assert a != Grid(a.cells, a.origin, generation=1)
