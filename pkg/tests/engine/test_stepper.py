import pytest
import numpy as np
from hypothesis import given, settings, strategies as st
from caatlas.engine import BitBoard, Grid, evolve, step, step_reference
from caatlas.errors import UnsupportedRuleError
from caatlas.rules import Rule, classify, parse_rule

LIFE = parse_rule("B3/S23")
GLIDER = ".o.\n..o\nooo"

b0_free_rules = st.builds(
    Rule,
    st.frozensets(st.integers(min_value=1, max_value=8)),
    st.frozensets(st.integers(min_value=0, max_value=8)),
)


def random_soup(seed: int, size: int = 16) -> Grid:
    rng = np.random.default_rng(seed)
    cells = rng.random((size, size)) < rng.uniform(0, 1)
    return Grid(np.pad(cells, 1), origin=(-1, -1))


def run_reference(grid: Grid, rule: Rule, steps: int) -> Grid:
    for _ in range(steps):
        grid = step_reference(grid, rule)
    return grid


@pytest.mark.parametrize("stepper", [step, step_reference])
def test_blinker_oscillates(stepper):
    grid = Grid.from_cells([(0, 0), (1, 0), (2, 0)])
    nxt = stepper(grid, LIFE)
    assert nxt.live_cells() == {(1, -1), (1, 0), (1, 1)}
    assert nxt.generation == 1
    assert stepper(nxt, LIFE).live_cells() == grid.live_cells()


@pytest.mark.parametrize("stepper", [step, step_reference])
def test_block_is_still(stepper):
    grid = Grid.from_text("oo\noo")
    assert stepper(grid, LIFE).live_cells() == grid.live_cells()


@pytest.mark.parametrize("stepper", [step, step_reference])
def test_empty_grid_stays_empty(stepper):
    grid = Grid.empty(6, 6)
    assert stepper(grid, parse_rule("B12345678/S012345678")).population == 0


def test_glider_moves_diagonally():
    grid = Grid.from_text(GLIDER)
    assert evolve(grid, LIFE, 4) == Grid(
        grid.translated(1, 1).cells, grid.translated(1, 1).origin, 4
    )


def test_steppers_reject_b0():
    grid = Grid.from_text(GLIDER)
    with pytest.raises(UnsupportedRuleError):
        step(grid, parse_rule("B03/S23"))
    with pytest.raises(UnsupportedRuleError):
        step_reference(grid, parse_rule("B03/S23"))


def test_live_cells_near_the_edge_get_room():
    grid = Grid(np.ones((3, 3), dtype=bool))
    assert grid.margin() == 0
    assert step(grid, LIFE) == step_reference(grid, LIFE)


def test_wide_grids_cross_word_boundaries():
    rng = np.random.default_rng(11)
    cells = rng.random((5, 150)) < 0.4
    grid = Grid(np.pad(cells, 1))
    assert BitBoard.from_grid(grid).to_grid().live_cells() == (
        grid.live_cells()
    )
    assert evolve(grid, LIFE, 3) == run_reference(grid, LIFE, 3)


def test_high_birth_rule_matches_reference():
    rule = parse_rule("B1245678/S0145678")
    grid = random_soup(5)
    assert evolve(grid, rule, 10) == run_reference(grid, rule, 10)


def test_plan_schedule_alternates_rules():
    plan = classify(parse_rule("B03/S23"))
    grid = random_soup(9)
    expected = step_reference(step_reference(grid, plan.even), plan.odd)
    assert evolve(grid, plan, 2) == expected


@settings(max_examples=50, deadline=None)
@given(b0_free_rules, st.integers(min_value=0, max_value=2**32 - 1))
def test_bit_parallel_matches_reference(rule, seed):
    grid = random_soup(seed)
    assert evolve(grid, rule, 10) == run_reference(grid, rule, 10)


@pytest.mark.slow
def test_bit_parallel_matches_reference_on_many_soups():
    rng = np.random.default_rng(2024)
    for case in range(1000):
        born = {n for n in range(1, 9) if rng.random() < 0.5}
        survive = {n for n in range(9) if rng.random() < 0.5}
        rule = Rule.of(born, survive)
        grid = random_soup(case)
        assert evolve(grid, rule, 10) == run_reference(grid, rule, 10), rule


@settings(max_examples=30, deadline=None)
@given(
    b0_free_rules,
    st.integers(min_value=0, max_value=1000),
    st.integers(min_value=-40, max_value=40),
    st.integers(min_value=-40, max_value=40),
)
def test_shift_invariance(rule, seed, dx, dy):
    grid = random_soup(seed, size=8)
    moved_first = evolve(grid.translated(dx, dy), rule, 3)
    moved_after = evolve(grid, rule, 3).translated(dx, dy)
    assert moved_first == moved_after


@settings(max_examples=30, deadline=None)
@given(b0_free_rules, st.integers(min_value=0, max_value=1000))
def test_growth_is_bounded_by_one_cell_per_step(rule, seed):
    grid = random_soup(seed, size=8)
    box = grid.bounding_box()
    nxt = step(grid, rule)
    new_box = nxt.bounding_box()
    if box is None or new_box is None:
        return
    assert new_box[0] >= box[0] - 1
    assert new_box[1] >= box[1] - 1
    assert new_box[2] <= box[2] + 1
    assert new_box[3] <= box[3] + 1


def test_step_is_deterministic():
    grid = random_soup(1)
    assert step(grid, LIFE) == step(grid, LIFE)
