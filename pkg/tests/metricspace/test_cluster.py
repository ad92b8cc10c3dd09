import pytest
import numpy as np
from conftest import build_store, mixture
from caatlas.errors import ValidationError
from caatlas.metricspace import cluster, kmeans_plusplus


def test_single_cluster_is_the_global_mean(random_store):
    result = cluster(random_store, 1)
    assert result.converged
    assert set(result.labels) == {0}
    expected = random_store.vectors.astype(np.float64).mean(axis=0)
    assert np.allclose(result.centroids[0], expected)


def test_one_cluster_per_rule_has_zero_objective(random_store):
    result = cluster(random_store, len(random_store))
    assert result.objective == pytest.approx(0.0, abs=1e-12)
    assert sorted(result.labels) == list(range(len(random_store)))


def test_objective_never_increases(random_store):
    result = cluster(random_store, 5, seed=3)
    history = result.objective_history
    assert len(history) == result.iterations
    for before, after in zip(history, history[1:]):
        assert after <= before + 1e-12


def test_cluster_is_deterministic_for_a_seed(random_store):
    a = cluster(random_store, 4, seed=11)
    b = cluster(random_store, 4, seed=11)
    assert np.array_equal(a.labels, b.labels)
    assert np.array_equal(a.centroids, b.centroids)
    assert a.objective_history == b.objective_history


def test_two_obvious_groups_are_separated():
    store = build_store(
        {
            "B/S": mixture([1.0, 0.0]),
            "B1/S": mixture([0.95, 0.05]),
            "B2/S": mixture([0.0, 1.0]),
            "B3/S": mixture([0.05, 0.95]),
        }
    )
    result = cluster(store, 2, seed=0)
    assignment = result.assignment
    ids = [int(i) for i in store.ids]
    assert assignment[ids[0]] == assignment[ids[1]]
    assert assignment[ids[2]] == assignment[ids[3]]
    assert assignment[ids[0]] != assignment[ids[2]]
    label = assignment[ids[0]]
    assert result.members(label) == ids[:2]


def test_max_iters_limits_the_run(random_store):
    result = cluster(random_store, 6, max_iters=1)
    assert result.iterations == 1
    assert not result.converged


@pytest.mark.parametrize("k", [0, 41])
def test_invalid_k(random_store, k):
    with pytest.raises(ValidationError, match="k must lie between 1"):
        cluster(random_store, k)


def test_invalid_max_iters(random_store):
    with pytest.raises(ValidationError, match="max_iters"):
        cluster(random_store, 2, max_iters=0)


def test_kmeans_plusplus_handles_coincident_points():
    points = np.zeros((4, 3))
    centres = kmeans_plusplus(points, 3, np.random.default_rng(0))
    assert centres.shape == (3, 3)
    assert not centres.any()


def test_kmeans_plusplus_picks_distinct_points():
    points = np.eye(5)
    centres = kmeans_plusplus(points, 5, np.random.default_rng(2))
    assert sorted(map(tuple, centres)) == sorted(map(tuple, points))
