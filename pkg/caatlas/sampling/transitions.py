from typing import Optional, Tuple
import numpy as np
from ..engine import Grid
from ..errors import ValidationError
from ..rules import TRANSITIONS, Rule, half_vector
from ..rules.vectors import BORN, DIE, SURVIVE, UNBORN

Region = Tuple[int, int, int, int]


class TransitionCounts:
    """Tallies of observed transitions, indexed (transition, neighbours)."""

    def __init__(self, counts: Optional[np.ndarray] = None):
        if counts is None:
            counts = np.zeros((len(TRANSITIONS), 9), dtype=np.int64)
        self.counts = np.asarray(counts, dtype=np.int64)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __getitem__(self, key: str) -> int:
        """Count for a label such as 'B3' or 'U0'."""
        return int(self.counts[TRANSITIONS.index(key[0]), int(key[1:])])

    def __add__(self, other: "TransitionCounts") -> "TransitionCounts":
        return TransitionCounts(self.counts + other.counts)

    def __eq__(self, other) -> bool:
        return isinstance(other, TransitionCounts) and np.array_equal(
            self.counts, other.counts
        )

    def __repr__(self) -> str:
        nonzero = [
            f"{t}{n}={int(self.counts[i, n])}"
            for i, t in enumerate(TRANSITIONS)
            for n in range(9)
            if self.counts[i, n]
        ]
        return f"TransitionCounts({', '.join(nonzero)})"


def sampling_region(grid: Grid, fallback_size: int) -> Region:
    """
    Inclusive (x0, y0, x1, y1) region cells are drawn from: the live
    bounding box grown by one cell, or the initial soup square when nothing
    is alive.
    """
    box = grid.bounding_box()
    if box is None:
        return 0, 0, fallback_size - 1, fallback_size - 1
    x0, y0, x1, y1 = box
    return x0 - 1, y0 - 1, x1 + 1, y1 + 1


def tally(
    before: Grid,
    after: Grid,
    xs: np.ndarray,
    ys: np.ndarray,
) -> TransitionCounts:
    """Classifies the transitions of the given cells."""
    was_alive = before.states_at(xs, ys)
    now_alive = after.states_at(xs, ys)
    neighbours = before.neighbour_counts_at(xs, ys)
    kind = np.where(
        was_alive,
        np.where(now_alive, SURVIVE, DIE),
        np.where(now_alive, BORN, UNBORN),
    )
    counts = np.zeros((len(TRANSITIONS), 9), dtype=np.int64)
    np.add.at(counts, (kind, neighbours), 1)
    return TransitionCounts(counts)


def sample_transitions(
    before: Grid,
    after: Grid,
    rule: Rule,
    stream: np.random.Generator,
    n: int,
    fallback_size: int = 16,
) -> TransitionCounts:
    """
    Draws n cells uniformly, with replacement, from the sampling region of
    `before` and records the transition each made into `after`.
    """
    x0, y0, x1, y1 = sampling_region(before, fallback_size)
    xs = stream.integers(x0, x1 + 1, size=n)
    ys = stream.integers(y0, y1 + 1, size=n)
    counts = tally(before, after, xs, ys)
    allowed = half_vector(rule).reshape(len(TRANSITIONS), 9)
    if counts.counts[~allowed].any():
        raise ValidationError(
            f"Observed transitions that {rule} forbids; the grids are not "
            "one step of this rule apart."
        )
    return counts
