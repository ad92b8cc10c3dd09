import io
import shutil
import time
from pathlib import Path
from typing import Any, Dict, Iterable, Set, Tuple
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError
from .errors import (
    CheckpointError,
    OutputWriteError,
    StoreFormatError,
    StoreMergeError,
)
from .metricspace import (
    VectorStore,
    store_merge,
    store_read,
    store_write,
    write_atomic,
)
from .sampling import BehaviourVector, SoupParams

MANIFEST_NAME = "manifest.yaml"
BATCH_GLOB = "batch-*.cavs"


class CheckpointManager:
    """
    Durable progress of a sweep. Every finished batch is a complete vector
    store written under a temporary name and renamed into the checkpoint
    directory, so a batch file is either whole or absent. The YAML
    manifest pins the parameters and seed the batches were computed with.
    """

    def __init__(
        self, directory: Path, params: SoupParams, global_seed: int
    ):
        self.directory = Path(directory)
        self.params = params
        self.global_seed = global_seed
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise OutputWriteError(
                f"Cannot create checkpoint directory {self.directory}: {e}"
            ) from e
        self.manifest_path = self.directory / MANIFEST_NAME
        self.manifest = self._load_manifest()

    def _load_manifest(self) -> Dict[str, Any]:
        fresh = {
            "params": self.params.to_dict(),
            "seed": self.global_seed,
            "batches": {},
        }
        if not self.manifest_path.exists():
            return fresh
        yaml_parser = YAML(typ="safe")
        try:
            with open(self.manifest_path, "r") as f:
                data = yaml_parser.load(f) or {}
        except YAMLError as e:
            raise CheckpointError(
                f"Checkpoint manifest {self.manifest_path} is unreadable: {e}"
            ) from e
        if (
            data.get("params") != fresh["params"]
            or data.get("seed") != self.global_seed
        ):
            raise CheckpointError(
                f"Checkpoint at {self.directory} was started with different "
                "sampling parameters or seed. Use another --checkpoint "
                "directory or remove this one."
            )
        data.setdefault("batches", {})
        return data

    def _save_manifest(self):
        yaml_parser = YAML(typ="safe")
        buffer = io.StringIO()
        yaml_parser.dump(self.manifest, buffer)
        write_atomic(self.manifest_path, buffer.getvalue().encode("utf-8"))

    def batch_path(self, first_id: int) -> Path:
        return self.directory / f"batch-{first_id:06d}.cavs"

    def put(self, records: Iterable[Tuple[int, BehaviourVector]]) -> Path:
        """Persists one batch of finished records."""
        store = VectorStore.from_records(
            self.params, self.global_seed, records
        )
        if len(store) == 0:
            raise CheckpointError("Refusing to write an empty batch.")
        path = self.batch_path(int(store.ids[0]))
        store_write(store, path)
        self.manifest["batches"][path.name] = {
            "first": int(store.ids[0]),
            "last": int(store.ids[-1]),
            "count": len(store),
            "timestamp": time.time(),
        }
        self._save_manifest()
        return path

    def _read_batch(self, path: Path) -> VectorStore:
        try:
            batch = store_read(path)
        except StoreFormatError as e:
            raise CheckpointError(f"Corrupt checkpoint batch: {e}") from e
        if (
            batch.params != self.params
            or batch.global_seed != self.global_seed
        ):
            raise CheckpointError(
                f"Checkpoint batch {path.name} does not match the sweep's "
                "parameters or seed."
            )
        return batch

    def load(self) -> VectorStore:
        """
        Everything persisted so far, as one store. A batch that exists on
        disk but is missing from the manifest is still complete and is
        picked up; a batch listed in the manifest but missing is an error.
        """
        paths = sorted(self.directory.glob(BATCH_GLOB))
        missing = set(self.manifest["batches"]) - {p.name for p in paths}
        if missing:
            raise CheckpointError(
                f"Checkpoint batch(es) missing from {self.directory}: "
                f"{', '.join(sorted(missing))}"
            )
        merged = VectorStore.empty(self.params, self.global_seed)
        for path in paths:
            try:
                merged = store_merge(merged, self._read_batch(path))
            except StoreMergeError as e:
                raise CheckpointError(
                    f"Checkpoint batch {path.name} is inconsistent: {e}"
                ) from e
        return merged

    def completed_ids(self) -> Set[int]:
        return {int(i) for i in self.load().ids}

    def clean(self):
        if self.directory.exists():
            print(f"Removing checkpoint at: {self.directory}")
            shutil.rmtree(self.directory)
