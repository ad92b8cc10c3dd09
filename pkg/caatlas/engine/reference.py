import numpy as np
from scipy.signal import convolve2d
from ..rules import Rule
from .bitboard import check_rule
from .grid import Grid

_MOORE_KERNEL = np.array([[1, 1, 1], [1, 0, 1], [1, 1, 1]], dtype=np.int64)


def neighbour_counts(grid: Grid) -> np.ndarray:
    """Live neighbour count of every stored cell, by direct summation."""
    return convolve2d(
        grid.cells.astype(np.int64), _MOORE_KERNEL, mode="same", fillvalue=0
    )


def step_reference(grid: Grid, rule: Rule) -> Grid:
    """
    Straightforward per-cell stepper with the same contract as the
    bit-parallel one. It exists to check the fast path.
    """
    check_rule(rule)
    grown = grid.with_margin(2)
    counts = neighbour_counts(grown)
    born = np.array([n in rule.born for n in range(9)])
    survive = np.array([n in rule.survive for n in range(9)])
    alive = grown.cells
    nxt = np.where(alive, survive[counts], born[counts])
    return Grid(nxt, grown.origin, grid.generation + 1)
