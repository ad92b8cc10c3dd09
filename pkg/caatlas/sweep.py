import multiprocessing as mp
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple
import numpy as np
from tqdm import tqdm
from .checkpoint import CheckpointManager
from .errors import ValidationError
from .metricspace import VectorStore, store_write
from .rules import RULE_COUNT, Rule, decode, encode, neighbourhood
from .sampling import BehaviourVector, SeedRecipe, SoupParams, estimate_rule

DEFAULT_BATCH_SIZE = 64

Shard = Tuple[int, int]
Task = Tuple[int, SoupParams, int]


def parse_shard(text: str) -> Shard:
    """Parses 'i/n' into a shard index and count."""
    try:
        index, count = (int(part) for part in text.split("/"))
    except ValueError as e:
        raise ValidationError(
            f"Invalid shard '{text}'. Expected the form 'i/n', e.g. 0/4."
        ) from e
    if count < 1 or not 0 <= index < count:
        raise ValidationError(
            f"Shard index must satisfy 0 <= i < n, got {index}/{count}."
        )
    return index, count


def parse_range(text: str) -> range:
    """Parses 'A:B' into the half-open id range [A, B)."""
    try:
        start, stop = (int(part) for part in text.split(":"))
    except ValueError as e:
        raise ValidationError(
            f"Invalid range '{text}'. Expected the form 'A:B'."
        ) from e
    if not 0 <= start <= stop <= RULE_COUNT:
        raise ValidationError(
            f"Range {start}:{stop} must lie within 0:{RULE_COUNT}."
        )
    return range(start, stop)


def select_rule_ids(
    id_range: Optional[range] = None,
    rules: Optional[Sequence[Rule]] = None,
    around: Optional[Rule] = None,
    radius: int = 2,
    shard: Optional[Shard] = None,
) -> List[int]:
    """
    The ascending rule ids a sweep covers. Exactly one of id_range, rules
    or around may be given; none means the whole family. A shard keeps the
    ids with id % n == i.
    """
    given = [x is not None for x in (id_range, rules, around)]
    if sum(given) > 1:
        raise ValidationError(
            "Choose only one of a range, a rule list or a neighbourhood."
        )
    if rules is not None:
        ids = {encode(rule) for rule in rules}
    elif around is not None:
        ids = {encode(rule) for rule in neighbourhood(around, radius)}
    elif id_range is not None:
        ids = set(id_range)
    else:
        ids = set(range(RULE_COUNT))
    if shard is not None:
        index, count = shard
        ids = {i for i in ids if i % count == index}
    return sorted(ids)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: which rules, where results go, and how to compute."""

    rule_ids: Tuple[int, ...]
    output: Path
    params: SoupParams
    global_seed: int = 0
    jobs: int = 1
    checkpoint: Optional[Path] = None
    batch_size: int = DEFAULT_BATCH_SIZE

    def validate(self):
        if self.jobs < 1:
            raise ValidationError(
                f"jobs must be at least 1, got {self.jobs}."
            )
        if self.batch_size < 1:
            raise ValidationError("batch_size must be at least 1.")
        if list(self.rule_ids) != sorted(set(self.rule_ids)):
            raise ValidationError(
                "Sweep rule ids must be unique and sorted."
            )
        self.params.validate()
        SeedRecipe(self.global_seed)

    @property
    def checkpoint_dir(self) -> Path:
        if self.checkpoint is not None:
            return Path(self.checkpoint)
        return self.output.with_name(self.output.name + ".checkpoint")


def _estimate(task: Task) -> Tuple[int, np.ndarray]:
    rule_id, params, global_seed = task
    vector = estimate_rule(decode(rule_id), params, SeedRecipe(global_seed))
    return rule_id, vector.values


def _batches(ids: List[int], size: int) -> Iterator[List[int]]:
    for start in range(0, len(ids), size):
        yield ids[start : start + size]


def run_sweep(
    spec: SweepSpec, quiet: bool = False, keep_checkpoint: bool = False
) -> VectorStore:
    """
    Computes every selected rule not already checkpointed, then writes the
    output store. Each rule's vector depends only on its id, the
    parameters and the seed, so the output is the same whatever the
    worker count or however often the sweep was interrupted.
    """
    spec.validate()
    checkpoint = CheckpointManager(
        spec.checkpoint_dir, spec.params, spec.global_seed
    )
    done = checkpoint.completed_ids()
    todo = [i for i in spec.rule_ids if i not in done]
    resumed = len(spec.rule_ids) - len(todo)
    if resumed:
        print(f"Resuming sweep: {resumed} rule(s) already checkpointed.")
    print(
        f"Computing {len(todo)} rule(s) with {spec.jobs} worker(s), "
        f"{spec.params.num_trials} trials each."
    )

    pool = mp.Pool(processes=spec.jobs) if spec.jobs > 1 else None
    try:
        with tqdm(
            total=len(spec.rule_ids),
            initial=resumed,
            unit="rule",
            file=sys.stderr,
            disable=quiet,
        ) as bar:
            for batch in _batches(todo, spec.batch_size):
                tasks = [(i, spec.params, spec.global_seed) for i in batch]
                if pool is not None:
                    results = pool.map(_estimate, tasks)
                else:
                    results = [_estimate(task) for task in tasks]
                checkpoint.put(
                    (rule_id, BehaviourVector(values))
                    for rule_id, values in results
                )
                bar.update(len(batch))
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()

    store = checkpoint.load().subset(spec.rule_ids)
    store_write(store, spec.output)
    print(f"Wrote {len(store)} vector(s) to {spec.output}")
    if not keep_checkpoint:
        checkpoint.clean()
    return store
