import math
from typing import Iterable
import numpy as np
from scipy.spatial.distance import cdist
from ..rules import Rule, boolean_vector, classify
from ..sampling import BehaviourVector

BLOCK_ROWS = 65536


def real_distance(a: BehaviourVector, b: BehaviourVector) -> float:
    """Euclidean distance over all 72 components."""
    return float(np.linalg.norm(a.values - b.values))


def boolean_distance(r1: Rule, r2: Rule) -> float:
    """
    Euclidean distance between the 72-bit vectors of two rules' emulation
    plans, divided by sqrt(2) so a one-digit difference between single-rule
    plans scores sqrt(2) rather than 2.
    """
    a = boolean_vector(classify(r1))
    b = boolean_vector(classify(r2))
    return math.sqrt(np.count_nonzero(a != b) / 2)


def distances_to(
    vectors: np.ndarray, query: np.ndarray, block_rows: int = BLOCK_ROWS
) -> np.ndarray:
    """Euclidean distance from every row of vectors to query, computed in
    double precision a block at a time."""
    query = np.asarray(query, dtype=np.float64).reshape(1, -1)
    out = np.empty(len(vectors), dtype=np.float64)
    for start in range(0, len(vectors), block_rows):
        block = np.asarray(
            vectors[start : start + block_rows], dtype=np.float64
        )
        out[start : start + len(block)] = cdist(block, query)[:, 0]
    return out


def boolean_vectors_for_ids(rule_ids: Iterable[int]) -> np.ndarray:
    """
    72-bit plan vectors for many rule ids at once, as an (N, 72) uint8
    array. Mirrors classify/boolean_vector with bit arithmetic.
    """
    ids = np.asarray(list(rule_ids), dtype=np.int64).reshape(-1, 1)
    digits = np.arange(9)
    born = ((ids >> digits) & 1).astype(np.uint8)
    survive = ((ids >> (9 + digits)) & 1).astype(np.uint8)

    has_b0 = born[:, :1] == 1
    has_s8 = survive[:, 8:] == 1
    anti = has_b0 & has_s8
    strobing = has_b0 & ~has_s8

    # Plain and anti-infinity plans run one rule in both halves.
    run_born = np.where(anti, 1 - survive[:, ::-1], born)
    run_survive = np.where(anti, 1 - born[:, ::-1], survive)

    even_born = np.where(strobing, 1 - born, run_born)
    even_survive = np.where(strobing, 1 - survive, run_survive)
    odd_born = np.where(strobing, survive[:, ::-1], run_born)
    odd_survive = np.where(strobing, born[:, ::-1], run_survive)

    return np.concatenate(
        [
            even_born,
            even_survive,
            1 - even_born,
            1 - even_survive,
            odd_born,
            odd_survive,
            1 - odd_born,
            1 - odd_survive,
        ],
        axis=1,
    ).astype(np.uint8)


def boolean_distances_to(
    rule_ids: Iterable[int], target: Rule
) -> np.ndarray:
    """Boolean distance from target to each rule id."""
    bits = boolean_vectors_for_ids(rule_ids)
    reference = boolean_vector(classify(target)).astype(np.uint8)
    mismatches = np.count_nonzero(bits != reference, axis=1)
    return np.sqrt(mismatches / 2)
