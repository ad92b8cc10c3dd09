import pytest
from pathlib import Path
from typing import Dict, Sequence
import numpy as np
from caatlas.metricspace import VectorStore
from caatlas.rules import HALF_DIMS, encode, parse_rule
from caatlas.sampling import BehaviourVector, SoupParams


def one_hot(even_index: int, odd_index: int = None) -> BehaviourVector:
    """A valid vector with all mass on one component per half."""
    if odd_index is None:
        odd_index = even_index
    values = np.zeros(2 * HALF_DIMS)
    values[even_index] = 1.0
    values[HALF_DIMS + odd_index] = 1.0
    return BehaviourVector(values)


def mixture(weights: Sequence[float]) -> BehaviourVector:
    """
    A valid vector from weights on the first len(weights) components of
    each half, normalised.
    """
    half = np.zeros(HALF_DIMS)
    half[: len(weights)] = weights
    half /= half.sum()
    return BehaviourVector(np.concatenate([half, half]))


def random_vector(rng: np.random.Generator) -> BehaviourVector:
    halves = [rng.dirichlet(np.ones(HALF_DIMS)) for _ in range(2)]
    return BehaviourVector(np.concatenate(halves))


def build_store(
    vectors: Dict[str, BehaviourVector],
    params: SoupParams = None,
    seed: int = 0,
) -> VectorStore:
    """A store from a mapping of rule strings to vectors."""
    return VectorStore.from_records(
        params or SoupParams(),
        seed,
        [(encode(parse_rule(r)), v) for r, v in vectors.items()],
    )


# Small enough for a test run: a few trials of short soups.
@pytest.fixture
def small_params() -> SoupParams:
    """Sampling parameters for fast stochastic tests."""
    return SoupParams(num_steps=10, num_samples=20, num_trials=4)


@pytest.fixture
def line_store() -> VectorStore:
    """
    Three rules whose vectors lie on a line: the middle one is the mean of
    the outer two.
    """
    return build_store(
        {
            "B3/S23": mixture([1.0, 0.0]),
            "B36/S23": mixture([0.5, 0.5]),
            "B3/S238": mixture([0.0, 1.0]),
        }
    )


@pytest.fixture
def random_store() -> VectorStore:
    """Forty rules with random but valid vectors."""
    rng = np.random.default_rng(7)
    ids = sorted(rng.choice(2**18, size=40, replace=False))
    return VectorStore.from_records(
        SoupParams(),
        0,
        [(int(i), random_vector(rng)) for i in ids],
    )


@pytest.fixture
def store_path(tmp_path: Path) -> Path:
    return tmp_path / "atlas.cavs"
