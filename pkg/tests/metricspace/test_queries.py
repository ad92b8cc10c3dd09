import pytest
import numpy as np
from conftest import build_store, mixture, one_hot
from caatlas.errors import RuleNotInStoreError, ValidationError
from caatlas.metricspace import (
    VectorStore,
    boolean_nearest,
    centroid,
    hybrid,
    idiosyncrasy,
    nearest,
    opposite,
    rank_curve,
    rank_of,
)
from caatlas.rules import encode, format_rule, parse_rule
from caatlas.sampling import SoupParams


def rid(text: str) -> int:
    return encode(parse_rule(text))


LIFE = rid("B3/S23")
MIDDLE = rid("B36/S23")
FAR = rid("B3/S238")


def test_nearest_orders_by_distance(line_store):
    result = nearest(
        line_store, line_store.vector(LIFE), 3, reference=parse_rule("B3/S23")
    )
    assert [n.rule_id for n in result] == [LIFE, MIDDLE, FAR]
    assert [n.rank for n in result] == [1, 2, 3]
    assert [n.real_distance for n in result] == pytest.approx([0, 1, 2])
    assert result[0].boolean_distance == 0.0
    assert result[1].boolean_distance == pytest.approx(2**0.5)
    assert format_rule(result[2].rule) == "B3/S238"


def test_nearest_without_reference_has_no_boolean_distance(line_store):
    result = nearest(line_store, mixture([0.5, 0.5]), 1)
    assert result[0].rule_id == MIDDLE
    assert result[0].boolean_distance is None


def test_nearest_breaks_ties_by_lower_id():
    store = build_store(
        {"B2/S": one_hot(18), "B1/S": one_hot(18), "B/S": one_hot(19)}
    )
    result = nearest(store, one_hot(18), 3)
    assert [n.rule_id for n in result] == [rid("B1/S"), rid("B2/S"), 0]
    assert rank_of(store, one_hot(18), rid("B2/S")) == 2


def test_nearest_skips_excluded_ids_without_using_a_rank(line_store):
    result = nearest(line_store, line_store.vector(LIFE), 2, exclude={LIFE})
    assert [n.rule_id for n in result] == [MIDDLE, FAR]
    assert [n.rank for n in result] == [1, 2]


def test_nearest_caps_k_at_store_size(line_store):
    assert len(nearest(line_store, mixture([1.0]), 50)) == 3


def test_nearest_rejects_bad_input(line_store):
    with pytest.raises(ValidationError, match="k must be at least 1"):
        nearest(line_store, mixture([1.0]), 0)
    empty = VectorStore.empty(SoupParams(), 0)
    with pytest.raises(ValidationError, match="empty store"):
        nearest(empty, mixture([1.0]), 1)


def test_rank_of(line_store):
    query = line_store.vector(LIFE)
    assert rank_of(line_store, query, LIFE) == 1
    assert rank_of(line_store, query, FAR) == 3
    with pytest.raises(RuleNotInStoreError):
        rank_of(line_store, query, rid("B2/S"))


def test_rank_curve_starts_at_zero_and_rises(line_store, random_store):
    assert rank_curve(line_store, LIFE, 3) == [
        (1, pytest.approx(0.0)),
        (2, pytest.approx(1.0)),
        (3, pytest.approx(2.0)),
    ]
    target = int(random_store.ids[5])
    curve = rank_curve(random_store, target, 20)
    distances = [d for _, d in curve]
    assert distances[0] == 0.0
    assert distances == sorted(distances)


def test_hybrid_returns_midpoint_neighbours_excluding_parents(line_store):
    result = hybrid(line_store, LIFE, FAR, 5)
    assert [n.rule_id for n in result] == [MIDDLE]
    assert result[0].real_distance == pytest.approx(0.0)
    assert result[0].boolean_distance is None


def test_opposite(line_store):
    far = opposite(line_store, LIFE)
    assert far.rule_id == FAR
    assert far.real_distance == pytest.approx(2.0)
    assert far.rank == 3
    assert far.boolean_distance == pytest.approx(2**0.5)


def test_opposite_of_a_two_rule_store():
    store = build_store({"B3/S23": one_hot(18), "B2/S": one_hot(19)})
    assert opposite(store, LIFE).rule_id == rid("B2/S")
    assert opposite(store, rid("B2/S")).rule_id == LIFE


def test_centroid_of_single_member(line_store):
    mean, paradigm = centroid(line_store, [FAR])
    assert paradigm == FAR
    assert mean == line_store.vector(FAR)


def test_centroid_of_two_members_picks_lower_id_on_tie(line_store):
    mean, paradigm = centroid(line_store, [FAR, LIFE])
    assert np.allclose(mean.values, mixture([0.5, 0.5]).values)
    assert paradigm == LIFE


def test_centroid_picks_the_closest_member(line_store):
    _, paradigm = centroid(line_store, [LIFE, MIDDLE, FAR])
    assert paradigm == MIDDLE
    with pytest.raises(ValidationError, match="at least one member"):
        centroid(line_store, [])


def test_idiosyncrasy_ranks_isolated_rules_first():
    # Positions 0, 0.1 and 1 along one line.
    store = build_store(
        {
            "B/S": mixture([1.0, 0.0]),
            "B1/S": mixture([0.9, 0.1]),
            "B2/S": mixture([0.0, 1.0]),
        }
    )
    ranked = idiosyncrasy(store, 3)
    assert [rule_id for rule_id, _ in ranked] == [rid("B2/S"), 0, rid("B1/S")]
    assert ranked[0][1] == pytest.approx(1.8, abs=1e-6)
    assert ranked[1][1] == pytest.approx(0.2, abs=1e-6)


def test_idiosyncrasy_blocks_and_progress(random_store):
    seen = []
    blocked = idiosyncrasy(
        random_store, 10, block_rows=3, progress=seen.append
    )
    assert sum(seen) == len(random_store)
    assert blocked == idiosyncrasy(random_store, 10)
    scores = [score for _, score in blocked]
    assert scores == sorted(scores, reverse=True)


def test_idiosyncrasy_needs_two_rules(line_store):
    with pytest.raises(ValidationError, match="at least two"):
        idiosyncrasy(line_store.subset([LIFE]), 1)


def test_boolean_nearest_of_life():
    result = boolean_nearest(parse_rule("B3/S23"), 4)
    assert result[0].rule_id == LIFE
    assert result[0].real_distance == 0.0
    assert format_rule(result[1].rule) == "B0123478/S01234678"
    assert result[1].boolean_distance == 0.0
    assert result[2].boolean_distance == pytest.approx(2**0.5)
    assert [n.rank for n in result] == [1, 2, 3, 4]
