from typing import Iterable, Optional, Set, Tuple
import numpy as np
from ..errors import ValidationError

BoundingBox = Tuple[int, int, int, int]

# Moore neighbourhood offsets as (dx, dy).
MOORE_OFFSETS = tuple(
    (dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if dx or dy
)


class Grid:
    """
    A finite two-state cell field. Only the stored region is kept; every
    cell outside it is dead. Coordinates are signed (x, y) world positions
    and the stored region starts at `origin`.
    """

    def __init__(
        self,
        cells: np.ndarray,
        origin: Tuple[int, int] = (0, 0),
        generation: int = 0,
    ):
        self.cells = np.asarray(cells, dtype=bool)
        if self.cells.ndim != 2:
            raise ValidationError("Grid cells must be a 2-D array.")
        self.origin = (int(origin[0]), int(origin[1]))
        self.generation = generation

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def population(self) -> int:
        return int(np.count_nonzero(self.cells))

    @classmethod
    def empty(
        cls,
        width: int,
        height: int,
        origin: Tuple[int, int] = (0, 0),
        generation: int = 0,
    ) -> "Grid":
        return cls(np.zeros((height, width), dtype=bool), origin, generation)

    @classmethod
    def from_cells(
        cls,
        live: Iterable[Tuple[int, int]],
        generation: int = 0,
        margin: int = 2,
    ) -> "Grid":
        """Builds the smallest grid holding the given live cells plus a
        dead margin."""
        coords = list(live)
        if not coords:
            side = 2 * margin + 1
            return cls.empty(side, side, (-margin, -margin), generation)
        xs = [x for x, _ in coords]
        ys = [y for _, y in coords]
        x0, y0 = min(xs) - margin, min(ys) - margin
        width = max(xs) - x0 + margin + 1
        height = max(ys) - y0 + margin + 1
        grid = cls.empty(width, height, (x0, y0), generation)
        for x, y in coords:
            grid.cells[y - y0, x - x0] = True
        return grid

    @classmethod
    def from_text(
        cls, text: str, origin: Tuple[int, int] = (0, 0), margin: int = 2
    ) -> "Grid":
        """Reads the '.'/'o' row dump produced by to_text."""
        live = []
        rows = [row for row in text.strip().splitlines() if row.strip()]
        for y, row in enumerate(rows):
            for x, char in enumerate(row.strip()):
                if char == "o":
                    live.append((x + origin[0], y + origin[1]))
                elif char != ".":
                    raise ValidationError(
                        f"Unexpected character '{char}' in grid dump "
                        f"(row {y}, column {x})."
                    )
        return cls.from_cells(live, margin=margin)

    def to_text(self) -> str:
        """Rows of '.' and 'o' covering the live bounding box."""
        box = self.bounding_box()
        if box is None:
            return ""
        x0, y0, x1, y1 = box
        ox, oy = self.origin
        block = self.cells[y0 - oy : y1 - oy + 1, x0 - ox : x1 - ox + 1]
        return "\n".join(
            "".join("o" if c else "." for c in row) for row in block
        )

    def live_cells(self) -> Set[Tuple[int, int]]:
        ys, xs = np.nonzero(self.cells)
        ox, oy = self.origin
        return {(int(x) + ox, int(y) + oy) for x, y in zip(xs, ys)}

    def bounding_box(self) -> Optional[BoundingBox]:
        """Minimal (x0, y0, x1, y1) rectangle, inclusive, or None when no
        cell is live."""
        rows = np.flatnonzero(self.cells.any(axis=1))
        if rows.size == 0:
            return None
        cols = np.flatnonzero(self.cells.any(axis=0))
        ox, oy = self.origin
        return (
            int(cols[0]) + ox,
            int(rows[0]) + oy,
            int(cols[-1]) + ox,
            int(rows[-1]) + oy,
        )

    def margin(self) -> int:
        """Thickness of the dead ring between live cells and the edge of
        the stored region."""
        box = self.bounding_box()
        if box is None:
            return min(self.width, self.height)
        x0, y0, x1, y1 = box
        ox, oy = self.origin
        return min(
            x0 - ox,
            y0 - oy,
            ox + self.width - 1 - x1,
            oy + self.height - 1 - y1,
        )

    def with_margin(self, margin: int) -> "Grid":
        """Returns a grid whose dead ring is at least `margin` cells thick,
        growing the stored region on every side if needed."""
        missing = margin - self.margin()
        if missing <= 0:
            return self
        cells = np.pad(self.cells, missing)
        origin = (self.origin[0] - missing, self.origin[1] - missing)
        return Grid(cells, origin, self.generation)

    def translated(self, dx: int, dy: int) -> "Grid":
        return Grid(
            self.cells.copy(),
            (self.origin[0] + dx, self.origin[1] + dy),
            self.generation,
        )

    def contains(self, x: int, y: int) -> bool:
        ox, oy = self.origin
        return ox <= x < ox + self.width and oy <= y < oy + self.height

    def state(self, x: int, y: int) -> bool:
        if not self.contains(x, y):
            return False
        ox, oy = self.origin
        return bool(self.cells[y - oy, x - ox])

    def states_at(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Vectorised state lookup; positions outside the region are
        dead."""
        col = np.asarray(xs) - self.origin[0]
        row = np.asarray(ys) - self.origin[1]
        inside = (
            (col >= 0) & (col < self.width) & (row >= 0) & (row < self.height)
        )
        out = np.zeros(col.shape, dtype=bool)
        out[inside] = self.cells[row[inside], col[inside]]
        return out

    def neighbour_counts_at(
        self, xs: np.ndarray, ys: np.ndarray
    ) -> np.ndarray:
        """Live Moore neighbour counts for many positions at once."""
        xs = np.asarray(xs)
        ys = np.asarray(ys)
        counts = np.zeros(xs.shape, dtype=np.int64)
        for dx, dy in MOORE_OFFSETS:
            counts += self.states_at(xs + dx, ys + dy)
        return counts

    def neighbour_count(self, x: int, y: int) -> int:
        """Number of live Moore neighbours of a cell in the stored
        region."""
        if not self.contains(x, y):
            raise ValidationError(
                f"Cell ({x}, {y}) lies outside the stored region."
            )
        return sum(self.state(x + dx, y + dy) for dx, dy in MOORE_OFFSETS)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        return (
            self.generation == other.generation
            and self.live_cells() == other.live_cells()
        )

    def __repr__(self) -> str:
        return (
            f"Grid(origin={self.origin}, size={self.width}x{self.height}, "
            f"generation={self.generation}, population={self.population})"
        )
