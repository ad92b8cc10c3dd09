from typing import Dict, List, Tuple, Type
from .rule import ALL_DIGITS, Rule, all_rules, encode


def anti_infinity(rule: Rule) -> Rule:
    """
    Black/white reversal. A dead cell with n live neighbours in the
    reversed world is a live cell with 8 - n live neighbours in the
    original, so births and survivals swap and are mirrored. Applying the
    map twice returns the input.
    """
    return Rule(
        frozenset(8 - n for n in ALL_DIGITS - rule.survive),
        frozenset(8 - n for n in ALL_DIGITS - rule.born),
    )


def anti_strobing(rule: Rule) -> Tuple[Rule, Rule]:
    """
    Splits a B0-without-S8 rule into the rule applied at even generations
    and the rule applied at odd generations of a complement-tracked grid.
    """
    even = Rule(ALL_DIGITS - rule.born, ALL_DIGITS - rule.survive)
    odd = Rule(
        frozenset(8 - n for n in rule.survive),
        frozenset(8 - n for n in rule.born),
    )
    return even, odd


class EmulationPlan:
    """
    Base class for the three ways a rule is run. Every rule a plan hands to
    the engine is free of B0.
    """

    kind = "base"
    # Whether the even and odd generations run different rules.
    alternates = False

    def __init__(self, original: Rule):
        self.original = original

    def rule_for_generation(self, generation: int) -> Rule:
        """The rule that advances the grid from this generation."""
        raise NotImplementedError(
            f"rule_for_generation is not implemented for plan '{self.kind}'."
        )

    @property
    def halves(self) -> Tuple[Rule, Rule]:
        """The rules behind the even and odd halves of a 72-dim vector."""
        return self.rule_for_generation(0), self.rule_for_generation(1)

    @property
    def run_rules(self) -> List[Rule]:
        even, odd = self.halves
        return [even, odd] if self.alternates else [even]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EmulationPlan)
            and self.kind == other.kind
            and self.original == other.original
            and self.halves == other.halves
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.original, self.halves))

    def __repr__(self) -> str:
        rules = ", ".join(str(r) for r in self.run_rules)
        return f"{type(self).__name__}({self.original} -> {rules})"

    @classmethod
    def _get_plan_types(cls) -> Dict[str, Type["EmulationPlan"]]:
        """Central registry of plan kinds."""
        return {
            "plain": PlainPlan,
            "anti-infinity": AntiInfinityPlan,
            "strobing": StrobingPlan,
        }

    @classmethod
    def get_available_kinds(cls) -> List[str]:
        return list(cls._get_plan_types().keys())

    @classmethod
    def for_rule(cls, rule: Rule) -> "EmulationPlan":
        """Factory that picks the plan kind for a rule."""
        plan_types = cls._get_plan_types()
        if 0 not in rule.born:
            return plan_types["plain"](rule)
        if 8 in rule.survive:
            return plan_types["anti-infinity"](rule)
        return plan_types["strobing"](rule)


class PlainPlan(EmulationPlan):
    """A rule without B0, run unchanged."""

    kind = "plain"

    def __init__(self, original: Rule):
        super().__init__(original)
        self.run = original

    def rule_for_generation(self, generation: int) -> Rule:
        return self.run


class AntiInfinityPlan(EmulationPlan):
    """A B0 rule with S8, run black/white reversed."""

    kind = "anti-infinity"

    def __init__(self, original: Rule):
        super().__init__(original)
        self.run = anti_infinity(original)

    def rule_for_generation(self, generation: int) -> Rule:
        return self.run


class StrobingPlan(EmulationPlan):
    """A B0 rule without S8, run as an alternating even/odd rule pair."""

    kind = "strobing"
    alternates = True

    def __init__(self, original: Rule):
        super().__init__(original)
        self.even, self.odd = anti_strobing(original)

    def rule_for_generation(self, generation: int) -> Rule:
        return self.even if generation % 2 == 0 else self.odd


def classify(rule: Rule) -> EmulationPlan:
    """Returns the emulation plan for a rule."""
    return EmulationPlan.for_rule(rule)


def duplicates(rule: Rule) -> List[Rule]:
    """
    Rules whose plans run exactly the same rules as this one, including the
    rule itself. Only plain and anti-infinity rules can have a partner.
    """
    plan = classify(rule)
    if isinstance(plan, StrobingPlan):
        return [rule]
    partner = anti_infinity(plan.halves[0])
    found = {rule, plan.halves[0]}
    if isinstance(classify(partner), AntiInfinityPlan):
        found.add(partner)
    return sorted(found, key=encode)


def partition_counts() -> Dict[str, int]:
    """Counts the plan kinds over the whole rule family."""
    counts = {kind: 0 for kind in EmulationPlan.get_available_kinds()}
    for rule in all_rules():
        counts[classify(rule).kind] += 1
    return counts
