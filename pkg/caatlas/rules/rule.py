from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Tuple
from ..errors import RuleParseError, ValidationError

DIGITS = range(9)
ALL_DIGITS: FrozenSet[int] = frozenset(DIGITS)

# Born digits occupy bits 0-8 of a rule id, survive digits bits 9-17.
SURVIVE_SHIFT = 9
RULE_COUNT = 1 << 18


@dataclass(frozen=True)
class Rule:
    """A semi-totalistic rule: the neighbour counts that birth a dead cell
    and the counts that keep a live cell alive."""

    born: FrozenSet[int]
    survive: FrozenSet[int]

    def __post_init__(self):
        for name in ("born", "survive"):
            digits = getattr(self, name)
            if not isinstance(digits, frozenset):
                digits = frozenset(digits)
                object.__setattr__(self, name, digits)
            bad = sorted(d for d in digits if d not in ALL_DIGITS)
            if bad:
                raise ValidationError(
                    f"Rule {name} digits must lie in 0..8, got {bad}."
                )

    @classmethod
    def of(cls, born: Iterable[int], survive: Iterable[int]) -> "Rule":
        return cls(frozenset(born), frozenset(survive))

    @property
    def has_b0(self) -> bool:
        return 0 in self.born

    def __str__(self) -> str:
        return format_rule(self)


def _digit_list(
    text: str, start: int, stop_char: str
) -> Tuple[FrozenSet[int], int]:
    """
    Reads digits from text[start:] up to stop_char (or the end of the
    string when stop_char is empty). Returns the digits and the index of the
    stop character.
    """
    seen = set()
    pos = start
    while pos < len(text) and text[pos] != stop_char:
        char = text[pos]
        if char not in "012345678":
            raise RuleParseError(
                f"Invalid character '{char}' (digits must be 0-8)", text, pos
            )
        digit = int(char)
        if digit in seen:
            raise RuleParseError(f"Repeated digit '{char}'", text, pos)
        seen.add(digit)
        pos += 1
    return frozenset(seen), pos


def parse_rule(text: str) -> Rule:
    """
    Parses a rule string such as 'B3/S23'. Matching is case-insensitive and
    digits may appear in any order; the result is canonical.
    """
    if not text or text[0] not in "Bb":
        raise RuleParseError("Expected 'B'", text, 0)

    born, slash = _digit_list(text, 1, "/")
    if slash >= len(text):
        raise RuleParseError("Missing '/'", text, slash)

    s_pos = slash + 1
    if s_pos >= len(text) or text[s_pos] not in "Ss":
        raise RuleParseError("Expected 'S'", text, s_pos)

    survive, _ = _digit_list(text, s_pos + 1, "")
    return Rule(born, survive)


def format_rule(rule: Rule) -> str:
    """Returns the canonical 'B.../S...' string with ascending digits."""
    born = "".join(str(d) for d in sorted(rule.born))
    survive = "".join(str(d) for d in sorted(rule.survive))
    return f"B{born}/S{survive}"


def encode(rule: Rule) -> int:
    """Maps a rule to its id in [0, 262144)."""
    value = 0
    for d in rule.born:
        value |= 1 << d
    for d in rule.survive:
        value |= 1 << (SURVIVE_SHIFT + d)
    return value


def decode(rule_id: int) -> Rule:
    """Inverse of encode."""
    if not 0 <= rule_id < RULE_COUNT:
        raise ValidationError(
            f"Rule id {rule_id} is outside the range 0..{RULE_COUNT - 1}."
        )
    born = frozenset(d for d in DIGITS if rule_id >> d & 1)
    survive = frozenset(
        d for d in DIGITS if rule_id >> (SURVIVE_SHIFT + d) & 1
    )
    return Rule(born, survive)


def all_rules() -> Iterator[Rule]:
    """Yields every semi-totalistic rule in rule id order."""
    for rule_id in range(RULE_COUNT):
        yield decode(rule_id)


def digit_distance(a: Rule, b: Rule) -> int:
    """Number of digit insertions or deletions turning one rule into the
    other."""
    return len(a.born ^ b.born) + len(a.survive ^ b.survive)


def neighbourhood(rule: Rule, radius: int) -> List[Rule]:
    """
    All rules within the given digit distance of rule, ordered by rule id.
    At radius 2 around B3/S23 this yields 1 + 18 + 153 = 172 rules.
    """
    if radius < 0:
        raise ValidationError("Neighbourhood radius must not be negative.")
    origin = encode(rule)
    ids = {origin}
    for r in range(1, min(radius, 18) + 1):
        for bits in combinations(range(18), r):
            flipped = origin
            for bit in bits:
                flipped ^= 1 << bit
            ids.add(flipped)
    return [decode(i) for i in sorted(ids)]
