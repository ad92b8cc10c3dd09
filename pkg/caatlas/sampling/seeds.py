from dataclasses import dataclass
import numpy as np
from ..errors import ValidationError

MASK64 = (1 << 64) - 1
TRIAL_BITS = 46
RULE_BITS = 18


def splitmix64(value: int) -> int:
    """The SplitMix64 finaliser: a bijective avalanche mix of 64 bits."""
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix(global_seed: int, rule_id: int, trial: int) -> int:
    """
    Stream seed for one (rule, trial) pair. The pair is packed losslessly
    into one word (rule in the low 18 bits) and XORed with the mixed global
    seed before a final bijective mix, so distinct pairs never collide.
    """
    if not 0 <= rule_id < 1 << RULE_BITS:
        raise ValidationError(f"Rule id {rule_id} does not fit 18 bits.")
    if not 0 <= trial < 1 << TRIAL_BITS:
        raise ValidationError(f"Trial index {trial} is out of range.")
    key = rule_id | trial << RULE_BITS
    return splitmix64(splitmix64(global_seed & MASK64) ^ key)


@dataclass(frozen=True)
class SeedRecipe:
    """Derives an independent random stream for every (rule, trial)."""

    global_seed: int = 0

    def __post_init__(self):
        if not 0 <= self.global_seed <= MASK64:
            raise ValidationError(
                f"Global seed {self.global_seed} is not an unsigned "
                "64-bit integer."
            )

    def stream_seed(self, rule_id: int, trial: int) -> int:
        return mix(self.global_seed, rule_id, trial)

    def stream(self, rule_id: int, trial: int) -> np.random.Generator:
        seed = np.random.SeedSequence(self.stream_seed(rule_id, trial))
        return np.random.Generator(np.random.PCG64(seed))
