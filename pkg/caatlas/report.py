"""Console and CSV rendering for the command-line tool."""

import csv
import io
from typing import List, Optional, Sequence
from .metricspace import Neighbour, VectorStore, rank_of
from .rules import (
    AntiInfinityPlan,
    EmulationPlan,
    Rule,
    StrobingPlan,
    TRANSITIONS,
    classify,
    dimension_labels,
    duplicates,
    encode,
    format_rule,
)
from .sampling import BehaviourVector

OUTPUT_FORMATS = ("table", "csv")


def render(
    headers: Sequence[str], rows: Sequence[Sequence[str]], fmt: str
) -> str:
    """Renders rows as an aligned text table or as CSV."""
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
        return buffer.getvalue().rstrip("\n")

    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append(
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths))
        )
    return "\n".join(line.rstrip() for line in lines)


def plan_change(plan: EmulationPlan) -> str:
    """The rule change a plan makes, empty for plain rules."""
    if isinstance(plan, AntiInfinityPlan):
        return format_rule(plan.run)
    if isinstance(plan, StrobingPlan):
        return f"{format_rule(plan.even)} / {format_rule(plan.odd)}"
    return ""


def describe_plan(plan: EmulationPlan) -> str:
    if isinstance(plan, StrobingPlan):
        return (
            f"{plan.kind}: even {format_rule(plan.even)}, "
            f"odd {format_rule(plan.odd)}"
        )
    if isinstance(plan, AntiInfinityPlan):
        return f"{plan.kind}: runs {format_rule(plan.run)}"
    return f"{plan.kind}: runs {format_rule(plan.original)}"


def vector_report(rule: Rule, vector: BehaviourVector, fmt: str) -> str:
    """Probability tables per half (one shared table for single-rule
    plans), or one CSV row."""
    if fmt == "csv":
        row = [format_rule(rule)] + [f"{v:.6f}" for v in vector.values]
        return render(["rule"] + dimension_labels(), [row], "csv")

    plan = classify(rule)
    sections = [f"Rule {format_rule(rule)} ({describe_plan(plan)})"]
    halves = ("even", "odd") if plan.alternates else ("even",)
    for half in halves:
        title = (
            f"{half} generations"
            if plan.alternates
            else "both halves (identical)"
        )
        table = vector.as_table(half)
        rows = [
            [name] + [f"{p:.4f}" for p in table[i]]
            for i, name in enumerate(TRANSITIONS)
        ]
        headers = [""] + [str(n) for n in range(9)]
        sections.append(f"\n{title}:\n{render(headers, rows, 'table')}")
    return "\n".join(sections)


def duplicate_ranks(
    store: VectorStore, query: BehaviourVector, rule: Rule
) -> str:
    """
    Ranks of a rule and of its duplicates that are in the store, joined
    with '&'. Empty when the rule has no stored duplicate.
    """
    stored = [r for r in duplicates(rule) if encode(r) in store]
    if len(stored) < 2:
        return ""
    ranks = sorted(rank_of(store, query, encode(r)) for r in stored)
    return " & ".join(str(r) for r in ranks)


def neighbour_report(
    neighbours: List[Neighbour],
    fmt: str,
    target: Optional[Rule] = None,
    store: Optional[VectorStore] = None,
    query: Optional[BehaviourVector] = None,
) -> str:
    """
    Ranked neighbours with the rule change of each plan and, when a store
    and query are given, the ranks of duplicate rules.
    """
    headers = ["rank", "rule", "change", "duplicates", "real", "boolean"]
    rows = []
    for n in neighbours:
        name = format_rule(n.rule)
        if target is not None and n.rule == target and fmt == "table":
            name += " (target)"
        dup = ""
        if store is not None and query is not None:
            dup = duplicate_ranks(store, query, n.rule)
        rows.append(
            [
                str(n.rank),
                name,
                plan_change(classify(n.rule)),
                dup,
                f"{n.real_distance:.4f}",
                (
                    ""
                    if n.boolean_distance is None
                    else f"{n.boolean_distance:.4f}"
                ),
            ]
        )
    return render(headers, rows, fmt)
