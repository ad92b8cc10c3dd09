import io
import struct
import pytest
import numpy as np
from conftest import build_store, mixture, one_hot
from caatlas.errors import (
    OutputWriteError,
    RuleNotInStoreError,
    StoreFormatError,
    StoreMergeError,
    StoreNotFoundError,
    ValidationError,
)
from caatlas.metricspace import (
    VectorStore,
    export_csv,
    store_from_bytes,
    store_merge,
    store_read,
    store_to_bytes,
    store_write,
)
from caatlas.metricspace.store import HEADER
from caatlas.rules import encode, parse_rule
from caatlas.sampling import SoupParams


def test_header_layout():
    assert HEADER.size == 69


def test_write_then_read_is_bit_exact(random_store, store_path):
    store_write(random_store, store_path)
    loaded = store_read(store_path)
    assert loaded == random_store
    assert store_to_bytes(loaded) == store_path.read_bytes()


def test_header_fields(line_store):
    data = store_to_bytes(line_store)
    fields = HEADER.unpack_from(data)
    assert fields[0] == b"CAVS"
    assert fields[1:5] == (1, 0, 72, 4)
    assert fields[5] == 3
    assert fields[7:] == (0.0, 1.0, 16, 50, 50, 1000)
    record_size = 4 + 72 * 4
    assert len(data) == HEADER.size + 3 * record_size
    first_id = struct.unpack_from("<I", data, HEADER.size)[0]
    assert first_id == encode(parse_rule("B3/S23"))


def test_records_are_sorted_by_rule_id():
    store = build_store(
        {"B3/S238": one_hot(18), "B3/S23": one_hot(19), "B/S": one_hot(20)}
    )
    assert list(store.ids) == sorted(store.ids)
    assert store.ids[0] == 0


def test_index_and_membership(line_store):
    life = encode(parse_rule("B3/S23"))
    assert life in line_store
    assert encode(parse_rule("B2/S")) not in line_store
    assert line_store.vector(life) == mixture([1.0, 0.0])
    with pytest.raises(RuleNotInStoreError, match="B2/S"):
        line_store.vector(encode(parse_rule("B2/S")))


def test_subset(line_store):
    life = encode(parse_rule("B3/S23"))
    sub = line_store.subset([life])
    assert len(sub) == 1
    assert sub.params == line_store.params


@pytest.mark.parametrize(
    "mangle, message",
    [
        (lambda d: d[:10], "truncated header"),
        (lambda d: b"XXXX" + d[4:], "bad magic"),
        (lambda d: d[:4] + b"\x02" + d[5:], "unsupported store version 2"),
        (lambda d: d[:-3], "truncated"),
        (lambda d: d + b"\x00", "trailing bytes"),
    ],
)
def test_malformed_files_are_rejected(line_store, mangle, message):
    data = mangle(store_to_bytes(line_store))
    with pytest.raises(StoreFormatError, match=message):
        store_from_bytes(data)


def test_unnormalised_vector_in_file_is_rejected(line_store):
    data = bytearray(store_to_bytes(line_store))
    # First component of the first record.
    struct.pack_into("<f", data, HEADER.size + 4, 0.9)
    with pytest.raises(StoreFormatError, match="probability"):
        store_from_bytes(bytes(data))


def test_read_missing_file(tmp_path):
    with pytest.raises(StoreNotFoundError):
        store_read(tmp_path / "missing.cavs")


def test_write_into_a_file_path_fails_cleanly(line_store, tmp_path):
    blocker = tmp_path / "plain-file"
    blocker.write_text("")
    with pytest.raises(OutputWriteError, match="Cannot write"):
        store_write(line_store, blocker / "atlas.cavs")

    # The rename fails when a directory holds the name.
    (tmp_path / "atlas.cavs").mkdir()
    with pytest.raises(OutputWriteError, match="Cannot write"):
        store_write(line_store, tmp_path / "atlas.cavs")
    assert not list(tmp_path.glob(".atlas.cavs.*"))


def test_merge_of_even_and_odd_shards(random_store):
    even = random_store.subset([i for i in random_store.ids if i % 2 == 0])
    odd = random_store.subset([i for i in random_store.ids if i % 2 == 1])
    assert store_merge(odd, even) == random_store
    assert store_merge(even, odd) == random_store


def test_merge_rejects_overlap_naming_the_rule(line_store):
    life = encode(parse_rule("B3/S23"))
    with pytest.raises(StoreMergeError, match=f"B3/S23 \\(id {life}\\)"):
        store_merge(line_store, line_store.subset([life]))


def test_merge_rejects_mismatched_params_and_seed(line_store):
    other = VectorStore(
        SoupParams(num_trials=10),
        line_store.global_seed,
        line_store.ids,
        line_store.vectors,
    )
    with pytest.raises(StoreMergeError, match="different parameters"):
        store_merge(line_store, other)
    reseeded = VectorStore(
        line_store.params, 5, line_store.ids, line_store.vectors
    )
    with pytest.raises(StoreMergeError, match="different seeds"):
        store_merge(line_store, reseeded)


def test_store_rejects_unsorted_ids():
    vectors = np.stack([one_hot(18).values, one_hot(19).values])
    store = VectorStore(SoupParams(), 0, np.array([5, 3]), vectors)
    with pytest.raises(ValidationError, match="ascending"):
        store.validate()


def test_export_csv(line_store):
    out = io.StringIO()
    export_csv(line_store, out)
    lines = out.getvalue().splitlines()
    assert lines[0].startswith("rule,even_B0,even_B1,")
    assert lines[0].endswith(",odd_D8")
    assert len(lines) == 4
    first = lines[1].split(",")
    assert first[0] == "B3/S23"
    assert first[1] == "1.000000"
    assert len(first) == 73
