from typing import Optional, Tuple
import numpy as np
from ..engine import Grid, evolve
from ..rules import EmulationPlan, Rule, classify, encode
from .params import SoupParams
from .seeds import SeedRecipe
from .transitions import TransitionCounts, sample_transitions
from .vector import BehaviourVector

CountPair = Tuple[TransitionCounts, TransitionCounts]


def make_soup(
    stream: np.random.Generator,
    params: SoupParams,
    density: Optional[float] = None,
) -> Grid:
    """
    A random initial_size x initial_size soup at world (0, 0). The density
    is drawn uniformly from density_range unless one is forced.
    """
    if density is None:
        lo, hi = params.density_range
        density = float(stream.uniform(lo, hi))
    size = params.initial_size
    cells = stream.random((size, size)) < density
    return Grid(np.pad(cells, 1), origin=(-1, -1), generation=0)


def trial_density(
    stream: np.random.Generator, params: SoupParams, trial: int
) -> float:
    """
    Density for one trial of an estimate. density_range is cut into
    num_trials equal slices and trial k draws uniformly from slice k.
    Pooled over an estimate the densities are still uniform, and they
    cover the range evenly.
    """
    lo, hi = params.density_range
    fraction = (trial + float(stream.random())) / params.num_trials
    return min(lo + fraction * (hi - lo), hi)


def run_trial(
    plan: EmulationPlan,
    params: SoupParams,
    stream: np.random.Generator,
    density: Optional[float] = None,
) -> CountPair:
    """
    One run of the protocol: make a soup, advance it num_steps
    generations, then sample the next transition. Alternating plans sample
    one more transition so both halves receive num_samples each.
    """
    soup = make_soup(stream, params, density)
    grid = evolve(soup, plan, params.num_steps)
    halves = [TransitionCounts(), TransitionCounts()]
    for _ in range(2 if plan.alternates else 1):
        rule = plan.rule_for_generation(grid.generation)
        after = evolve(grid, rule, 1)
        halves[grid.generation % 2] += sample_transitions(
            grid,
            after,
            rule,
            stream,
            params.num_samples,
            fallback_size=params.initial_size,
        )
        grid = after
    if not plan.alternates:
        observed = halves[0] + halves[1]
        return observed, TransitionCounts(observed.counts.copy())
    return halves[0], halves[1]


def estimate_counts(
    plan: EmulationPlan, params: SoupParams, recipe: SeedRecipe
) -> CountPair:
    """
    Integer tallies summed over num_trials independent trials, each with
    its own stream and its own slice of the density range.
    """
    rule_id = encode(plan.original)
    even, odd = TransitionCounts(), TransitionCounts()
    for trial in range(params.num_trials):
        stream = recipe.stream(rule_id, trial)
        density = trial_density(stream, params, trial)
        trial_even, trial_odd = run_trial(plan, params, stream, density)
        even += trial_even
        odd += trial_odd
    return even, odd


def estimate_vector(
    plan: EmulationPlan, params: SoupParams, recipe: SeedRecipe
) -> BehaviourVector:
    """
    The behaviour vector of a plan. Streams are keyed by the original
    rule id, so the result depends only on the recipe, never on the order
    in which rules or trials are processed.
    """
    even, odd = estimate_counts(plan, params, recipe)
    vector = BehaviourVector.from_counts(even, odd)
    vector.check(plan)
    return vector


def estimate_rule(
    rule: Rule, params: SoupParams, recipe: SeedRecipe
) -> BehaviourVector:
    return estimate_vector(classify(rule), params, recipe)
