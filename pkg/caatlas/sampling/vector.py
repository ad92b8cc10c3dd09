from typing import Optional
import numpy as np
from ..errors import ValidationError
from ..rules import DIMS, HALF_DIMS, TRANSITIONS, EmulationPlan
from ..rules import boolean_vector
from .transitions import TransitionCounts

SUM_TOLERANCE = 1e-9


class BehaviourVector:
    """
    Estimated transition probabilities: 36 even-generation components then
    36 odd-generation components, each half summing to one.
    """

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (DIMS,):
            raise ValidationError(
                f"A behaviour vector has {DIMS} components, "
                f"got shape {values.shape}."
            )
        self.values = values

    @property
    def even(self) -> np.ndarray:
        return self.values[:HALF_DIMS]

    @property
    def odd(self) -> np.ndarray:
        return self.values[HALF_DIMS:]

    def half(self, name: str) -> np.ndarray:
        if name not in ("even", "odd"):
            raise ValidationError(f"Unknown half '{name}'.")
        return self.even if name == "even" else self.odd

    def as_table(self, half: str = "even") -> np.ndarray:
        """4x9 layout: rows B, S, U, D; columns neighbour counts 0..8."""
        return self.half(half).reshape(len(TRANSITIONS), 9)

    @classmethod
    def from_counts(
        cls, even: TransitionCounts, odd: TransitionCounts
    ) -> "BehaviourVector":
        halves = []
        for name, tallies in (("even", even), ("odd", odd)):
            total = tallies.total
            if total == 0:
                raise ValidationError(
                    f"Cannot normalise the {name} half: no samples."
                )
            halves.append(tallies.counts.reshape(-1) / total)
        return cls(np.concatenate(halves))

    def check(
        self,
        plan: Optional[EmulationPlan] = None,
        tolerance: float = SUM_TOLERANCE,
    ):
        """
        Validates normalisation and, when the plan is known, the zero
        pattern and half equality. Raises ValidationError.
        """
        if np.any(self.values < 0) or np.any(self.values > 1):
            raise ValidationError("Components must lie in [0, 1].")
        for name in ("even", "odd"):
            total = float(self.half(name).sum())
            if abs(total - 1.0) > tolerance:
                raise ValidationError(
                    f"The {name} half sums to {total!r}, not 1."
                )
        if plan is None:
            return
        allowed = boolean_vector(plan)
        if np.any(self.values[~allowed] != 0):
            raise ValidationError(
                f"Nonzero probability on a transition {plan.original} "
                "forbids."
            )
        if not plan.alternates and not np.array_equal(
            self.even, self.odd
        ):
            raise ValidationError(
                f"Plan for {plan.original} runs one rule but its halves "
                "differ."
            )

    def __eq__(self, other) -> bool:
        return isinstance(other, BehaviourVector) and np.array_equal(
            self.values, other.values
        )

    def __repr__(self) -> str:
        return f"BehaviourVector({np.count_nonzero(self.values)} nonzero)"
