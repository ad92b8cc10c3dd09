from typing import List
import numpy as np
from .emulation import EmulationPlan
from .rule import DIGITS, Rule

# Transition classes in dimension order: born (0->1), survive (1->1),
# unborn (0->0), die (1->0).
TRANSITIONS = ("B", "S", "U", "D")
BORN, SURVIVE, UNBORN, DIE = range(4)
HALVES = ("even", "odd")
HALF_DIMS = len(TRANSITIONS) * len(DIGITS)
DIMS = 2 * HALF_DIMS


def dimension_index(half: int, transition: int, neighbours: int) -> int:
    """Position of a (half, transition, neighbour count) component."""
    return half * HALF_DIMS + transition * len(DIGITS) + neighbours


def dimension_labels() -> List[str]:
    """Labels for the 72 dimensions, 'even_B0' through 'odd_D8'."""
    return [
        f"{half}_{t}{n}"
        for half in HALVES
        for t in TRANSITIONS
        for n in DIGITS
    ]


def half_vector(rule: Rule) -> np.ndarray:
    """The 36-bit allowed-transition vector of a single rule."""
    born = np.array([n in rule.born for n in DIGITS], dtype=bool)
    survive = np.array([n in rule.survive for n in DIGITS], dtype=bool)
    return np.concatenate([born, survive, ~born, ~survive])


def boolean_vector(plan: EmulationPlan) -> np.ndarray:
    """
    The 72-bit Boolean vector of a plan: the even-generation rule's bits
    followed by the odd-generation rule's bits. Plans that run one rule
    repeat it in both halves.
    """
    even, odd = plan.halves
    return np.concatenate([half_vector(even), half_vector(odd)])
