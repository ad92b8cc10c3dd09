from .bitboard import BitBoard, evolve, step
from .grid import Grid
from .reference import neighbour_counts, step_reference


def neighbour_count(grid: Grid, x: int, y: int) -> int:
    """Live Moore neighbours of cell (x, y) of the stored region."""
    return grid.neighbour_count(x, y)


__all__ = [
    "BitBoard",
    "Grid",
    "evolve",
    "neighbour_count",
    "neighbour_counts",
    "step",
    "step_reference",
]
