from dataclasses import dataclass, field
from typing import Dict, List
import numpy as np
from scipy.spatial.distance import cdist
from ..errors import ValidationError
from .store import VectorStore

ASSIGN_BLOCK_ROWS = 16384


@dataclass
class ClusterResult:
    """Outcome of a k-means run over a store."""

    ids: np.ndarray
    labels: np.ndarray
    centroids: np.ndarray
    objective_history: List[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False

    @property
    def assignment(self) -> Dict[int, int]:
        return {
            int(rule_id): int(label)
            for rule_id, label in zip(self.ids, self.labels)
        }

    @property
    def objective(self) -> float:
        return self.objective_history[-1]

    def members(self, label: int) -> List[int]:
        return [int(i) for i in self.ids[self.labels == label]]


def _assign(points: np.ndarray, centroids: np.ndarray):
    """Nearest centroid per point (ties to the lower index) and the
    squared distance to it."""
    labels = np.empty(len(points), dtype=np.int64)
    sq_dist = np.empty(len(points), dtype=np.float64)
    for start in range(0, len(points), ASSIGN_BLOCK_ROWS):
        block = points[start : start + ASSIGN_BLOCK_ROWS]
        d = cdist(block, centroids, "sqeuclidean")
        labels[start : start + len(block)] = np.argmin(d, axis=1)
        sq_dist[start : start + len(block)] = d.min(axis=1)
    return labels, sq_dist


def kmeans_plusplus(
    points: np.ndarray, k: int, rng: np.random.Generator
) -> np.ndarray:
    """
    Seeded k-means++ selection: each new centre is drawn with probability
    proportional to its squared distance from the centres chosen so far.
    When every point coincides with a centre, the lowest unused index is
    taken.
    """
    n = len(points)
    chosen = [int(rng.integers(n))]
    sq_dist = cdist(points, points[chosen], "sqeuclidean")[:, 0]
    while len(chosen) < k:
        total = sq_dist.sum()
        if total > 0:
            pick = int(rng.choice(n, p=sq_dist / total))
        else:
            used = set(chosen)
            pick = next(i for i in range(n) if i not in used)
        chosen.append(pick)
        new = cdist(points, points[[pick]], "sqeuclidean")[:, 0]
        sq_dist = np.minimum(sq_dist, new)
    return points[chosen].copy()


def cluster(
    store: VectorStore, k: int, max_iters: int = 100, seed: int = 0
) -> ClusterResult:
    """
    Lloyd's k-means under Euclidean distance. Iterates until assignments
    stop changing or max_iters is reached. A cluster left empty is
    re-seeded with the point farthest from its current centroid, lowest
    index first.
    """
    n = len(store)
    if not 1 <= k <= n:
        raise ValidationError(
            f"k must lie between 1 and the store size {n}, got {k}."
        )
    if max_iters < 1:
        raise ValidationError("max_iters must be at least 1.")

    points = store.vectors.astype(np.float64)
    centroids = kmeans_plusplus(points, k, np.random.default_rng(seed))
    result = ClusterResult(
        ids=store.ids.copy(),
        labels=np.zeros(n, dtype=np.int64),
        centroids=centroids,
    )
    previous = None
    for iteration in range(1, max_iters + 1):
        labels, sq_dist = _assign(points, centroids)
        result.labels = labels
        result.centroids = centroids.copy()
        result.objective_history.append(float(sq_dist.sum()))
        result.iterations = iteration
        if previous is not None and np.array_equal(labels, previous):
            result.converged = True
            break
        previous = labels

        centroids = centroids.copy()
        sizes = np.bincount(labels, minlength=k)
        spare = sq_dist.copy()
        for j in range(k):
            if sizes[j]:
                centroids[j] = points[labels == j].mean(axis=0)
            else:
                far = int(np.argmax(spare))
                centroids[j] = points[far]
                spare[far] = -1.0
    return result
