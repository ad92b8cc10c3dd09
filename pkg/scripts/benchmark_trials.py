#!/usr/bin/env python3
"""
Measures soup trials per second on one core, using the default protocol
(16x16 soups, 50 steps, 50 samples) and B3/S23 unless told otherwise.

The figure is reported, never enforced: a full sweep of the rule family
needs roughly 262 million trials, so the printed estimate shows how long
that takes on this machine.
"""

import argparse
import time
from tqdm import tqdm
from caatlas.rules import RULE_COUNT, classify, encode, parse_rule
from caatlas.sampling import SeedRecipe, SoupParams, run_trial

TARGET_RATE = 100.0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rule", default="B3/S23", help="Rule to run.")
    parser.add_argument(
        "--trials", type=int, default=500, help="Trials to time."
    )
    parser.add_argument("--seed", type=int, default=0, help="Global seed.")
    args = parser.parse_args()

    rule = parse_rule(args.rule)
    plan = classify(rule)
    params = SoupParams()
    recipe = SeedRecipe(args.seed)
    rule_id = encode(rule)

    start = time.perf_counter()
    for trial in tqdm(range(args.trials), unit="trial"):
        run_trial(plan, params, recipe.stream(rule_id, trial))
    elapsed = time.perf_counter() - start

    rate = args.trials / elapsed
    full_sweep = RULE_COUNT * params.num_trials / rate
    print(f"Rule: {args.rule} ({plan.kind})")
    print(f"Trials: {args.trials} in {elapsed:.2f} s")
    print(f"Throughput: {rate:.1f} trials/second/core")
    print(
        f"Full sweep estimate: {full_sweep / 86400:.1f} core-days "
        f"at {params.num_trials} trials per rule"
    )
    if rate < TARGET_RATE:
        print(f"Note: below the {TARGET_RATE:.0f} trials/second target.")


if __name__ == "__main__":
    main()
