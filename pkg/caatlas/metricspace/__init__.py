from .cluster import ClusterResult, cluster, kmeans_plusplus
from .distance import (
    boolean_distance,
    boolean_distances_to,
    boolean_vectors_for_ids,
    distances_to,
    real_distance,
)
from .projection import (
    BaseProjection,
    CoordinateProjection,
    PcaProjection,
    dimension_from,
    principal_components,
    project2d,
)
from .queries import (
    Neighbour,
    boolean_nearest,
    centroid,
    hybrid,
    idiosyncrasy,
    nearest,
    opposite,
    rank_curve,
    rank_of,
)
from .store import (
    STORE_TOLERANCE,
    VectorStore,
    export_csv,
    store_from_bytes,
    store_merge,
    store_read,
    store_to_bytes,
    store_write,
    write_atomic,
)

__all__ = [
    "BaseProjection",
    "ClusterResult",
    "CoordinateProjection",
    "Neighbour",
    "PcaProjection",
    "STORE_TOLERANCE",
    "VectorStore",
    "boolean_distance",
    "boolean_distances_to",
    "boolean_vectors_for_ids",
    "boolean_nearest",
    "centroid",
    "cluster",
    "dimension_from",
    "distances_to",
    "export_csv",
    "hybrid",
    "idiosyncrasy",
    "kmeans_plusplus",
    "nearest",
    "opposite",
    "principal_components",
    "project2d",
    "rank_curve",
    "rank_of",
    "real_distance",
    "store_from_bytes",
    "store_merge",
    "store_read",
    "store_to_bytes",
    "store_write",
    "write_atomic",
]
