from .emulation import (
    AntiInfinityPlan,
    EmulationPlan,
    PlainPlan,
    StrobingPlan,
    anti_infinity,
    anti_strobing,
    classify,
    duplicates,
    partition_counts,
)
from .rule import (
    RULE_COUNT,
    Rule,
    all_rules,
    decode,
    digit_distance,
    encode,
    format_rule,
    neighbourhood,
    parse_rule,
)
from .vectors import (
    DIMS,
    HALF_DIMS,
    TRANSITIONS,
    boolean_vector,
    dimension_index,
    dimension_labels,
    half_vector,
)

__all__ = [
    "AntiInfinityPlan",
    "DIMS",
    "EmulationPlan",
    "HALF_DIMS",
    "PlainPlan",
    "RULE_COUNT",
    "Rule",
    "StrobingPlan",
    "TRANSITIONS",
    "all_rules",
    "anti_infinity",
    "anti_strobing",
    "boolean_vector",
    "classify",
    "decode",
    "digit_distance",
    "dimension_index",
    "dimension_labels",
    "duplicates",
    "encode",
    "format_rule",
    "half_vector",
    "neighbourhood",
    "parse_rule",
    "partition_counts",
]
