from .estimator import (
    estimate_counts,
    estimate_rule,
    estimate_vector,
    make_soup,
    run_trial,
    trial_density,
)
from .params import SoupParams
from .seeds import SeedRecipe, mix, splitmix64
from .transitions import (
    TransitionCounts,
    sample_transitions,
    sampling_region,
    tally,
)
from .vector import BehaviourVector

__all__ = [
    "BehaviourVector",
    "SeedRecipe",
    "SoupParams",
    "TransitionCounts",
    "estimate_counts",
    "estimate_rule",
    "estimate_vector",
    "make_soup",
    "mix",
    "run_trial",
    "sample_transitions",
    "sampling_region",
    "splitmix64",
    "tally",
    "trial_density",
]
