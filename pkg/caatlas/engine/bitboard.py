"""
Bit-parallel stepping. Each grid row is packed into little-endian 64-bit
words (column x lives in bit x % 64 of word x // 64), so one bitwise
operation updates 64 cells. Neighbour counts are summed into four bit
planes with full/half adders and the rule is applied plane-wise.
"""

from typing import Callable, Dict, List, Tuple, Union
import numpy as np
from ..errors import UnsupportedRuleError
from ..rules import EmulationPlan, Rule
from .grid import Grid

WORD_BITS = 64
_ONE = np.uint64(1)
_TOP = np.uint64(WORD_BITS - 1)
_WORD = np.dtype("<u8")

Schedule = Union[Rule, EmulationPlan, Callable[[int], Rule]]


def check_rule(rule: Rule):
    if 0 in rule.born:
        raise UnsupportedRuleError(
            f"Rule {rule} contains B0; run it through its emulation plan."
        )


def _rule_source(schedule: Schedule) -> Callable[[int], Rule]:
    if isinstance(schedule, Rule):
        return lambda generation: schedule
    if isinstance(schedule, EmulationPlan):
        return schedule.rule_for_generation
    return schedule


def _full_add(
    a: np.ndarray, b: np.ndarray, c: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    partial = a ^ b
    return partial ^ c, (a & b) | (c & partial)


class BitBoard:
    """Packed form of a Grid's stored region."""

    def __init__(
        self,
        words: np.ndarray,
        width: int,
        origin: Tuple[int, int],
        generation: int,
    ):
        self.words = words
        self.width = width
        self.origin = origin
        self.generation = generation
        self._column_mask = self._valid_columns(words.shape[1], width)

    @staticmethod
    def _valid_columns(num_words: int, width: int) -> np.ndarray:
        row = np.zeros(num_words * WORD_BITS, dtype=bool)
        row[:width] = True
        return np.packbits(row, bitorder="little").view(_WORD).astype(
            np.uint64
        )

    @classmethod
    def from_grid(cls, grid: Grid) -> "BitBoard":
        num_words = -(-grid.width // WORD_BITS)
        padded = np.zeros((grid.height, num_words * WORD_BITS), dtype=bool)
        padded[:, : grid.width] = grid.cells
        packed = np.packbits(padded, axis=1, bitorder="little")
        words = np.ascontiguousarray(packed).view(_WORD).astype(np.uint64)
        return cls(words, grid.width, grid.origin, grid.generation)

    def to_grid(self) -> Grid:
        raw = self.words.astype(_WORD).view(np.uint8)
        bits = np.unpackbits(raw, axis=1, bitorder="little")
        cells = bits[:, : self.width].astype(bool)
        return Grid(cells, self.origin, self.generation)

    def neighbour_planes(self) -> List[np.ndarray]:
        """Four bit planes holding each cell's live neighbour count."""
        w = self.words
        north = np.zeros_like(w)
        north[1:] = w[:-1]
        south = np.zeros_like(w)
        south[:-1] = w[1:]

        def from_west(rows: np.ndarray) -> np.ndarray:
            out = rows << _ONE
            out[:, 1:] |= rows[:, :-1] >> _TOP
            return out

        def from_east(rows: np.ndarray) -> np.ndarray:
            out = rows >> _ONE
            out[:, :-1] |= rows[:, 1:] << _TOP
            return out

        top_sum, top_carry = _full_add(
            from_west(north), north, from_east(north)
        )
        bot_sum, bot_carry = _full_add(
            from_west(south), south, from_east(south)
        )
        west, east = from_west(w), from_east(w)
        mid_sum, mid_carry = west ^ east, west & east

        bit0, carry = _full_add(top_sum, bot_sum, mid_sum)
        twos, fours_a = _full_add(top_carry, bot_carry, mid_carry)
        bit1 = twos ^ carry
        fours_b = twos & carry
        bit2 = fours_a ^ fours_b
        bit3 = fours_a & fours_b
        return [bit0, bit1, bit2, bit3]

    @staticmethod
    def _count_masks(
        planes: List[np.ndarray], digits
    ) -> Dict[int, np.ndarray]:
        masks = {}
        for n in digits:
            mask = None
            for bit, plane in enumerate(planes):
                term = plane if n >> bit & 1 else ~plane
                mask = term if mask is None else mask & term
            masks[n] = mask
        return masks

    def step(self, rule: Rule) -> "BitBoard":
        """Advances one generation. The caller keeps a dead ring of at
        least one cell around the live region."""
        check_rule(rule)
        planes = self.neighbour_planes()
        masks = self._count_masks(planes, rule.born | rule.survive)
        alive = self.words
        zero = np.zeros_like(alive)
        born = zero.copy()
        for n in rule.born:
            born |= masks[n]
        survive = zero.copy()
        for n in rule.survive:
            survive |= masks[n]
        nxt = ((~alive & born) | (alive & survive)) & self._column_mask
        return BitBoard(nxt, self.width, self.origin, self.generation + 1)


def evolve(grid: Grid, schedule: Schedule, steps: int) -> Grid:
    """
    Runs `steps` generations. The schedule is a single rule, an emulation
    plan, or a function from generation to rule. The grid is grown once so
    the live region can never reach its edge, then stays packed.
    """
    rule_for = _rule_source(schedule)
    if steps <= 0:
        return grid
    board = BitBoard.from_grid(grid.with_margin(steps + 1))
    for _ in range(steps):
        board = board.step(rule_for(board.generation))
    return board.to_grid()


def step(grid: Grid, rule: Rule) -> Grid:
    """Advances a grid one generation with the bit-parallel stepper."""
    check_rule(rule)
    return evolve(grid, rule, 1)
