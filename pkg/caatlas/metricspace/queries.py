from dataclasses import dataclass
from typing import Callable, Collection, List, Optional, Tuple
import numpy as np
from scipy.spatial.distance import cdist
from ..errors import ValidationError
from ..rules import RULE_COUNT, Rule, decode
from ..sampling import BehaviourVector
from .distance import boolean_distance, boolean_distances_to, distances_to
from .store import VectorStore

ProgressCallback = Callable[[int], None]


@dataclass(frozen=True)
class Neighbour:
    """One row of a ranking. boolean_distance is None when the query has
    no reference rule (hybrid midpoints, external vectors)."""

    rule_id: int
    real_distance: float
    boolean_distance: Optional[float]
    rank: int

    @property
    def rule(self) -> Rule:
        return decode(self.rule_id)


def _ranking(distances: np.ndarray, ids: np.ndarray) -> np.ndarray:
    """Row order by ascending distance, ties by ascending rule id."""
    return np.lexsort((ids, distances))


def _neighbours(
    store: VectorStore,
    distances: np.ndarray,
    rows: np.ndarray,
    reference: Optional[Rule],
    first_rank: int = 1,
) -> List[Neighbour]:
    result = []
    for offset, row in enumerate(rows):
        rule_id = int(store.ids[row])
        bool_dist = (
            boolean_distance(reference, decode(rule_id))
            if reference is not None
            else None
        )
        result.append(
            Neighbour(
                rule_id=rule_id,
                real_distance=float(distances[row]),
                boolean_distance=bool_dist,
                rank=first_rank + offset,
            )
        )
    return result


def nearest(
    store: VectorStore,
    query: BehaviourVector,
    k: int,
    reference: Optional[Rule] = None,
    exclude: Collection[int] = (),
) -> List[Neighbour]:
    """
    The k stored rules closest to query, by exhaustive scan. Exact ties are
    broken by ascending rule id. Excluded ids are skipped without taking a
    rank.
    """
    if len(store) == 0:
        raise ValidationError("Cannot search an empty store.")
    if k < 1:
        raise ValidationError(f"k must be at least 1, got {k}.")
    distances = distances_to(store.vectors, query.values)
    order = _ranking(distances, store.ids)
    if exclude:
        keep = ~np.isin(store.ids[order], np.fromiter(exclude, dtype=int))
        order = order[keep]
    return _neighbours(store, distances, order[:k], reference)


def rank_of(
    store: VectorStore, query: BehaviourVector, rule_id: int
) -> int:
    """1-based position of rule_id in the full ranking around query."""
    row = store.index_of(rule_id)
    distances = distances_to(store.vectors, query.values)
    d = distances[row]
    ahead = np.count_nonzero(distances < d) + np.count_nonzero(
        (distances == d) & (store.ids < rule_id)
    )
    return int(ahead) + 1


def rank_curve(
    store: VectorStore, target: int, max_rank: int
) -> List[Tuple[int, float]]:
    """(rank, distance) pairs for the max_rank nearest rules of target."""
    neighbours = nearest(store, store.vector(target), max_rank)
    return [(n.rank, n.real_distance) for n in neighbours]


def hybrid(
    store: VectorStore, r1: int, r2: int, k: int
) -> List[Neighbour]:
    """Rules nearest the midpoint of two stored rules, excluding both."""
    midpoint = BehaviourVector(
        (store.vector(r1).values + store.vector(r2).values) / 2
    )
    return nearest(store, midpoint, k, exclude={r1, r2})


def opposite(store: VectorStore, target: int) -> Neighbour:
    """The stored rule farthest from target; ties go to the lowest id."""
    query = store.vector(target)
    distances = distances_to(store.vectors, query.values)
    row = int(np.argmax(distances))
    rule_id = int(store.ids[row])
    return Neighbour(
        rule_id=rule_id,
        real_distance=float(distances[row]),
        boolean_distance=boolean_distance(decode(target), decode(rule_id)),
        rank=rank_of(store, query, rule_id),
    )


def centroid(
    store: VectorStore, members: Collection[int]
) -> Tuple[BehaviourVector, int]:
    """
    Component-wise mean of the members, and the member closest to it
    (ties go to the lowest id).
    """
    if not members:
        raise ValidationError("A centroid needs at least one member.")
    subset = store.subset(members)
    mean = subset.vectors.astype(np.float64).mean(axis=0)
    distances = distances_to(subset.vectors, mean)
    best = int(_ranking(distances, subset.ids)[0])
    return BehaviourVector(mean), int(subset.ids[best])


def idiosyncrasy(
    store: VectorStore,
    k: int,
    block_rows: int = 32,
    progress: Optional[ProgressCallback] = None,
) -> List[Tuple[int, float]]:
    """
    Each rule's distance to its nearest other rule; returns the k largest,
    descending, ties by ascending id. The quadratic scan runs in row
    blocks and reports the rows finished through `progress`.
    """
    n = len(store)
    if n < 2:
        raise ValidationError(
            "Idiosyncrasy needs a store with at least two rules."
        )
    matrix = store.vectors.astype(np.float64)
    nn = np.empty(n, dtype=np.float64)
    for start in range(0, n, block_rows):
        stop = min(start + block_rows, n)
        block = cdist(matrix[start:stop], matrix)
        block[np.arange(stop - start), np.arange(start, stop)] = np.inf
        nn[start:stop] = block.min(axis=1)
        if progress is not None:
            progress(stop - start)
    order = np.lexsort((store.ids, -nn))[:k]
    return [(int(store.ids[i]), float(nn[i])) for i in order]


def boolean_nearest(target: Rule, k: int) -> List[Neighbour]:
    """
    Ranking of the whole rule family by Boolean distance to target, no
    store needed. real_distance carries the Boolean distance too.
    """
    ids = np.arange(RULE_COUNT)
    distances = boolean_distances_to(ids, target)
    order = np.lexsort((ids, distances))[:k]
    return [
        Neighbour(
            rule_id=int(ids[row]),
            real_distance=float(distances[row]),
            boolean_distance=float(distances[row]),
            rank=rank + 1,
        )
        for rank, row in enumerate(order)
    ]
