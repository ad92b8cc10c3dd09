"""
Binary vector store. Layout (little-endian):

    magic 'CAVS' | version u8 = 1 | reserved u8 = 0 | dims u16 = 72
    float width u8 = 4 | record count u32 | global seed u64
    density lo f64 | density hi f64 | initial_size u64 | num_steps u64
    num_samples u64 | num_trials u64
    records: rule id u32 followed by 72 x f32, ascending rule id
"""

import os
import struct
import tempfile
from pathlib import Path
from typing import IO, Iterable, Iterator, Tuple, Union
import numpy as np
from ..errors import (
    OutputWriteError,
    RuleNotInStoreError,
    StoreFormatError,
    StoreMergeError,
    StoreNotFoundError,
    ValidationError,
)
from ..rules import DIMS, RULE_COUNT, decode, dimension_labels, format_rule
from ..sampling import BehaviourVector, SoupParams

MAGIC = b"CAVS"
VERSION = 1
FLOAT_WIDTH = 4
HEADER = struct.Struct("<4sBBHBIQddQQQQ")
RECORD = np.dtype([("rule", "<u4"), ("vector", "<f4", (DIMS,))])
STORE_TOLERANCE = 1e-5

PathLike = Union[str, Path]


class VectorStore:
    """
    Behaviour vectors keyed by rule id, sorted ascending, together with the
    parameters and seed that produced them. Treated as immutable.
    """

    def __init__(
        self,
        params: SoupParams,
        global_seed: int,
        ids: np.ndarray,
        vectors: np.ndarray,
    ):
        self.params = params
        self.global_seed = int(global_seed)
        self.ids = np.asarray(ids, dtype=np.uint32)
        self.vectors = np.asarray(vectors, dtype=np.float32).reshape(
            -1, DIMS
        )
        if len(self.ids) != len(self.vectors):
            raise ValidationError(
                "Store ids and vectors have different lengths."
            )

    @classmethod
    def empty(cls, params: SoupParams, global_seed: int) -> "VectorStore":
        return cls(
            params,
            global_seed,
            np.zeros(0, dtype=np.uint32),
            np.zeros((0, DIMS), dtype=np.float32),
        )

    @classmethod
    def from_records(
        cls,
        params: SoupParams,
        global_seed: int,
        records: Iterable[Tuple[int, BehaviourVector]],
    ) -> "VectorStore":
        pairs = sorted(records, key=lambda item: item[0])
        ids = np.array([rule_id for rule_id, _ in pairs], dtype=np.uint32)
        vectors = np.array(
            [vector.values for _, vector in pairs], dtype=np.float32
        ).reshape(-1, DIMS)
        store = cls(params, global_seed, ids, vectors)
        store.validate()
        return store

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, rule_id: int) -> bool:
        pos = np.searchsorted(self.ids, rule_id)
        return bool(pos < len(self.ids) and self.ids[pos] == rule_id)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorStore)
            and self.params == other.params
            and self.global_seed == other.global_seed
            and np.array_equal(self.ids, other.ids)
            and np.array_equal(self.vectors, other.vectors)
        )

    def index_of(self, rule_id: int) -> int:
        pos = int(np.searchsorted(self.ids, rule_id))
        if pos >= len(self.ids) or self.ids[pos] != rule_id:
            raise RuleNotInStoreError(
                f"Rule {format_rule(decode(int(rule_id)))} (id {rule_id}) "
                "is not in the store."
            )
        return pos

    def vector(self, rule_id: int) -> BehaviourVector:
        return BehaviourVector(self.vectors[self.index_of(rule_id)])

    def records(self) -> Iterator[Tuple[int, BehaviourVector]]:
        for rule_id, values in zip(self.ids, self.vectors):
            yield int(rule_id), BehaviourVector(values)

    def subset(self, rule_ids: Iterable[int]) -> "VectorStore":
        rows = sorted(self.index_of(int(r)) for r in set(rule_ids))
        return VectorStore(
            self.params, self.global_seed, self.ids[rows], self.vectors[rows]
        )

    def validate(self):
        """Checks store invariants; raises ValidationError."""
        if len(self.ids) and int(self.ids[-1]) >= RULE_COUNT:
            raise ValidationError(
                f"Rule id {int(self.ids[-1])} is out of range."
            )
        if np.any(np.diff(self.ids.astype(np.int64)) <= 0):
            raise ValidationError(
                "Store rule ids must be strictly ascending."
            )
        values = self.vectors.astype(np.float64)
        sums = values.reshape(len(self), 2, -1).sum(axis=2)
        bad = np.flatnonzero(
            np.any(values < 0, axis=1)
            | np.any(values > 1, axis=1)
            | np.any(np.abs(sums - 1.0) > STORE_TOLERANCE, axis=1)
        )
        if bad.size:
            rule_id = int(self.ids[bad[0]])
            raise ValidationError(
                f"Vector for rule id {rule_id} is not a pair of "
                "probability distributions."
            )

    def __repr__(self) -> str:
        return (
            f"VectorStore({len(self)} records, seed={self.global_seed})"
        )


def _header(store: VectorStore) -> bytes:
    params = store.params
    lo, hi = params.density_range
    return HEADER.pack(
        MAGIC,
        VERSION,
        0,
        DIMS,
        FLOAT_WIDTH,
        len(store),
        store.global_seed,
        lo,
        hi,
        params.initial_size,
        params.num_steps,
        params.num_samples,
        params.num_trials,
    )


def store_to_bytes(store: VectorStore) -> bytes:
    records = np.zeros(len(store), dtype=RECORD)
    records["rule"] = store.ids
    records["vector"] = store.vectors
    return _header(store) + records.tobytes()


def store_from_bytes(data: bytes, source: str = "<bytes>") -> VectorStore:
    if len(data) < HEADER.size:
        raise StoreFormatError(f"{source}: truncated header.")
    (
        magic,
        version,
        _reserved,
        dims,
        float_width,
        count,
        global_seed,
        lo,
        hi,
        initial_size,
        num_steps,
        num_samples,
        num_trials,
    ) = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise StoreFormatError(f"{source}: not a vector store (bad magic).")
    if version != VERSION:
        raise StoreFormatError(
            f"{source}: unsupported store version {version}."
        )
    if dims != DIMS or float_width != FLOAT_WIDTH:
        raise StoreFormatError(
            f"{source}: expected {DIMS} x f{FLOAT_WIDTH * 8} records, "
            f"found {dims} x f{float_width * 8}."
        )
    body = memoryview(data)[HEADER.size :]
    expected = count * RECORD.itemsize
    if len(body) < expected:
        raise StoreFormatError(
            f"{source}: truncated, header promises {count} records."
        )
    if len(body) > expected:
        raise StoreFormatError(f"{source}: trailing bytes after records.")
    records = np.frombuffer(body, dtype=RECORD, count=count)
    try:
        params = SoupParams(
            density_range=(lo, hi),
            initial_size=int(initial_size),
            num_steps=int(num_steps),
            num_samples=int(num_samples),
            num_trials=int(num_trials),
        )
        params.validate()
        store = VectorStore(
            params,
            global_seed,
            records["rule"].astype(np.uint32),
            records["vector"].astype(np.float32),
        )
        store.validate()
    except ValidationError as e:
        raise StoreFormatError(f"{source}: {e}") from e
    return store


def write_atomic(destination: PathLike, data: bytes):
    """
    Writes through a temporary file and renames it into place. Raises
    OutputWriteError when the destination cannot be written.
    """
    path = Path(destination)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(
            prefix=f".{path.name}.", suffix=".tmp", dir=path.parent
        )
    except OSError as e:
        raise OutputWriteError(f"Cannot write {path}: {e}") from e
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp_name, path)
    except BaseException as e:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        if isinstance(e, OSError):
            raise OutputWriteError(f"Cannot write {path}: {e}") from e
        raise


def store_write(store: VectorStore, destination: PathLike):
    write_atomic(destination, store_to_bytes(store))


def store_read(source: PathLike) -> VectorStore:
    path = Path(source).expanduser()
    if not path.is_file():
        raise StoreNotFoundError(f"Vector store not found at {path}")
    return store_from_bytes(path.read_bytes(), str(path))


def store_merge(a: VectorStore, b: VectorStore) -> VectorStore:
    """Sorted union of two stores built with the same params and seed."""
    if a.params != b.params:
        raise StoreMergeError(
            f"Cannot merge stores with different parameters: "
            f"{a.params} vs {b.params}."
        )
    if a.global_seed != b.global_seed:
        raise StoreMergeError(
            f"Cannot merge stores with different seeds: "
            f"{a.global_seed} vs {b.global_seed}."
        )
    overlap = np.intersect1d(a.ids, b.ids)
    if overlap.size:
        names = ", ".join(
            f"{format_rule(decode(int(i)))} (id {int(i)})"
            for i in overlap[:5]
        )
        more = f" and {overlap.size - 5} more" if overlap.size > 5 else ""
        raise StoreMergeError(f"Stores overlap on {names}{more}.")
    ids = np.concatenate([a.ids, b.ids])
    vectors = np.concatenate([a.vectors, b.vectors])
    order = np.argsort(ids, kind="stable")
    return VectorStore(a.params, a.global_seed, ids[order], vectors[order])


def export_csv(store: VectorStore, out: IO[str]):
    """One row per record: canonical rule then 72 components."""
    out.write(",".join(["rule"] + dimension_labels()) + "\n")
    for rule_id, values in zip(store.ids, store.vectors):
        cells = [format_rule(decode(int(rule_id)))]
        cells.extend(f"{float(v):.6f}" for v in values)
        out.write(",".join(cells) + "\n")
