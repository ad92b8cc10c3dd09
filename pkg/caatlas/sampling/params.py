from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Tuple
from ..errors import ValidationError


@dataclass(frozen=True)
class SoupParams:
    """
    Settings of the soup protocol. The defaults are the reference
    atlas settings: densities drawn from [0, 1], 16x16 soups, 50 steps,
    50 samples per run and 1000 runs per rule.
    """

    density_range: Tuple[float, float] = (0.0, 1.0)
    initial_size: int = 16
    num_steps: int = 50
    num_samples: int = 50
    num_trials: int = 1000

    def validate(self):
        """Validates the sampling parameters."""
        lo, hi = self.density_range
        if not (0.0 <= lo <= 1.0 and 0.0 <= hi <= 1.0):
            raise ValidationError(
                f"density_range {list(self.density_range)} must lie "
                "within [0, 1]."
            )
        if lo > hi:
            raise ValidationError(
                f"density_range lower bound {lo} exceeds upper bound {hi}."
            )
        for name in ("initial_size", "num_steps", "num_samples",
                     "num_trials"):
            value = getattr(self, name)
            if (
                isinstance(value, bool)
                or not isinstance(value, int)
                or value <= 0
            ):
                raise ValidationError(
                    f"Sampling parameter '{name}' must be a positive "
                    f"integer, got {value!r}."
                )

    @property
    def total_samples(self) -> int:
        """Samples per half of a finished estimate."""
        return self.num_samples * self.num_trials

    def with_overrides(self, **overrides: Any) -> "SoupParams":
        """Copy with every non-None override applied, validated."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        if "density_range" in changes:
            lo, hi = changes["density_range"]
            changes["density_range"] = (float(lo), float(hi))
        instance = replace(self, **changes)
        instance.validate()
        return instance

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["density_range"] = list(self.density_range)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SoupParams":
        defaults = cls()
        unknown = set(data) - set(defaults.to_dict())
        if unknown:
            raise ValidationError(
                f"Unknown sampling setting(s): {', '.join(sorted(unknown))}."
            )
        density = data.get("density_range", defaults.density_range)
        if not isinstance(density, (list, tuple)) or len(density) != 2:
            raise ValidationError(
                f"density_range must be a [low, high] pair, got {density!r}."
            )
        try:
            lo, hi = (float(x) for x in density)
        except (TypeError, ValueError) as e:
            raise ValidationError(
                f"density_range bounds must be numbers, got {density!r}."
            ) from e
        instance = cls(
            density_range=(lo, hi),
            initial_size=data.get("initial_size", defaults.initial_size),
            num_steps=data.get("num_steps", defaults.num_steps),
            num_samples=data.get("num_samples", defaults.num_samples),
            num_trials=data.get("num_trials", defaults.num_trials),
        )
        instance.validate()
        return instance
