from abc import ABC, abstractmethod
from typing import Dict, List, Tuple, Type, Union
import numpy as np
from ..errors import ValidationError
from ..rules import DIMS, dimension_labels
from .store import VectorStore

Dimension = Union[int, str]
PCA_ITERATIONS = 200
PCA_STOP_NORM = 1e-15


def dimension_from(value: Dimension) -> int:
    """
    Resolves a dimension given as an index (int or digit string) or as a
    label such as 'even_B3'.
    """
    if isinstance(value, str) and not value.strip().isdigit():
        labels = dimension_labels()
        if value not in labels:
            raise ValidationError(
                f"Unknown dimension '{value}'. Use an index 0-{DIMS - 1} "
                "or a label like 'even_B3'."
            )
        return labels.index(value)
    index = int(value)
    if not 0 <= index < DIMS:
        raise ValidationError(
            f"Dimension index {index} is outside 0-{DIMS - 1}."
        )
    return index


def _orthogonalize(v: np.ndarray, basis: List[np.ndarray]) -> np.ndarray:
    for u in basis:
        v = v - np.dot(v, u) * u
    return v


def principal_components(
    matrix: np.ndarray,
    count: int = 2,
    seed: int = 0,
    iterations: int = PCA_ITERATIONS,
) -> np.ndarray:
    """
    Top principal axes of the mean-centred rows of matrix, found by power
    iteration on the covariance with deflation. The start vector is drawn
    from the seed. Each axis is signed so that its largest-magnitude
    loading is positive. Returns a (count, dims) array.
    """
    data = np.asarray(matrix, dtype=np.float64)
    centred = data - data.mean(axis=0)
    cov = centred.T @ centred / max(len(centred), 1)
    start = np.random.default_rng(seed).standard_normal(cov.shape[0])

    components: List[np.ndarray] = []
    for _ in range(count):
        v = _orthogonalize(start, components)
        v /= np.linalg.norm(v)
        for _ in range(iterations):
            w = _orthogonalize(cov @ v, components)
            norm = np.linalg.norm(w)
            if norm < PCA_STOP_NORM:
                break
            v = w / norm
        eigenvalue = float(v @ cov @ v)
        cov = cov - eigenvalue * np.outer(v, v)
        if v[np.argmax(np.abs(v))] < 0:
            v = -v
        components.append(v)
    return np.array(components)


class BaseProjection(ABC):
    """A mapping of store vectors onto a plane."""

    name = "base"

    @abstractmethod
    def project(self, matrix: np.ndarray) -> np.ndarray:
        """Maps an (N, 72) matrix to (N, 2) coordinates."""
        raise NotImplementedError

    def axis_labels(self) -> Tuple[str, str]:
        return ("x", "y")

    @classmethod
    def _get_projection_types(cls) -> Dict[str, Type["BaseProjection"]]:
        return {
            "coords": CoordinateProjection,
            "pca": PcaProjection,
        }

    @classmethod
    def get_available_modes(cls) -> List[str]:
        return list(cls._get_projection_types().keys())

    @classmethod
    def create(cls, mode: str, **options) -> "BaseProjection":
        """Builds the projection registered under mode."""
        types = cls._get_projection_types()
        if mode not in types:
            raise ValidationError(
                f"Unknown projection mode '{mode}'. Must be one of: "
                f"{', '.join(cls.get_available_modes())}"
            )
        return types[mode].from_options(**options)

    @classmethod
    @abstractmethod
    def from_options(cls, **options) -> "BaseProjection":
        raise NotImplementedError


class CoordinateProjection(BaseProjection):
    name = "coords"

    def __init__(self, dim_a: Dimension, dim_b: Dimension):
        self.dim_a = dimension_from(dim_a)
        self.dim_b = dimension_from(dim_b)

    @classmethod
    def from_options(cls, dims=None, **_ignored) -> "CoordinateProjection":
        if not dims or len(dims) != 2:
            raise ValidationError(
                "Coordinate projection needs exactly two dimensions."
            )
        return cls(dims[0], dims[1])

    def project(self, matrix: np.ndarray) -> np.ndarray:
        data = np.asarray(matrix, dtype=np.float64)
        return data[:, [self.dim_a, self.dim_b]]

    def axis_labels(self) -> Tuple[str, str]:
        labels = dimension_labels()
        return (labels[self.dim_a], labels[self.dim_b])


class PcaProjection(BaseProjection):
    name = "pca"

    def __init__(self, seed: int = 0, iterations: int = PCA_ITERATIONS):
        if iterations < 1:
            raise ValidationError("PCA needs at least one iteration.")
        self.seed = seed
        self.iterations = iterations

    @classmethod
    def from_options(
        cls, seed: int = 0, iterations: int = PCA_ITERATIONS, **_ignored
    ) -> "PcaProjection":
        return cls(seed=seed, iterations=iterations)

    def project(self, matrix: np.ndarray) -> np.ndarray:
        data = np.asarray(matrix, dtype=np.float64)
        axes = principal_components(
            data, 2, seed=self.seed, iterations=self.iterations
        )
        return (data - data.mean(axis=0)) @ axes.T

    def axis_labels(self) -> Tuple[str, str]:
        return ("pc1", "pc2")


def project2d(
    store: VectorStore, projection: BaseProjection
) -> List[Tuple[int, float, float]]:
    """(rule id, x, y) for every stored rule, in store order."""
    if len(store) == 0:
        raise ValidationError("Cannot project an empty store.")
    coords = projection.project(store.vectors)
    return [
        (int(rule_id), float(x), float(y))
        for rule_id, (x, y) in zip(store.ids, coords)
    ]
