import numpy as np
from hypothesis import given, strategies as st
from caatlas.rules import (
    DIMS,
    HALF_DIMS,
    RULE_COUNT,
    boolean_vector,
    classify,
    decode,
    dimension_index,
    dimension_labels,
    half_vector,
    parse_rule,
)
from caatlas.rules.vectors import BORN, DIE, SURVIVE


def test_dimension_layout():
    labels = dimension_labels()
    assert len(labels) == DIMS == 72
    assert labels[0] == "even_B0"
    assert labels[dimension_index(0, SURVIVE, 3)] == "even_S3"
    assert labels[dimension_index(1, BORN, 0)] == "odd_B0"
    assert labels[-1] == "odd_D8"
    assert dimension_index(1, DIE, 8) == 71


def test_half_vector_of_life():
    bits = half_vector(parse_rule("B3/S23"))
    assert bits.shape == (HALF_DIMS,)
    assert list(np.flatnonzero(bits[:18])) == [3, 11, 12]
    # U and D are the complements of B and S.
    assert np.array_equal(bits[18:], ~bits[:18])


def test_boolean_vector_repeats_single_rule_plans():
    bits = boolean_vector(classify(parse_rule("B0123478/S01234678")))
    assert np.array_equal(bits[:HALF_DIMS], bits[HALF_DIMS:])
    life = boolean_vector(classify(parse_rule("B3/S23")))
    assert np.array_equal(bits, life)


def test_boolean_vector_of_strobing_plan():
    plan = classify(parse_rule("B03/S23"))
    bits = boolean_vector(plan)
    assert np.array_equal(bits[:HALF_DIMS], half_vector(plan.even))
    assert np.array_equal(bits[HALF_DIMS:], half_vector(plan.odd))


@given(st.integers(min_value=0, max_value=RULE_COUNT - 1))
def test_each_half_sets_eighteen_bits(rule_id):
    bits = boolean_vector(classify(decode(rule_id)))
    assert bits.shape == (DIMS,)
    assert bits[:HALF_DIMS].sum() == 18
    assert bits[HALF_DIMS:].sum() == 18
