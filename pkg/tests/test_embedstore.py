import math
import struct

import numpy as np
import pytest

from sciembed.embedstore import (
    EmbeddingMatrix,
    StoreError,
    assemble_input,
    knn_query,
    read_store,
    write_store,
)
from conftest import make_record


def test_assemble_input_basic():
    assert assemble_input(make_record(title="T", abstract="A")) == "T [SEP] A"


def test_assemble_input_empty_title():
    assert assemble_input(make_record(title="", abstract="A")) == " [SEP] A"


def test_assemble_input_flags_internal_sep():
    rec = make_record(title="has [SEP] inside", abstract="A")
    with pytest.warns(UserWarning, match=r"\[SEP\]"):
        text = assemble_input(rec)
    assert text == "has [SEP] inside [SEP] A"  # passed through unescaped


def test_matrix_validation():
    with pytest.raises(ValueError, match="duplicate"):
        EmbeddingMatrix(["a", "a"], np.zeros((2, 3)))
    with pytest.raises(ValueError, match="non-finite"):
        EmbeddingMatrix(["a"], np.array([[np.nan, 0.0]]))
    with pytest.raises(ValueError):
        EmbeddingMatrix(["a", "b"], np.zeros((3, 2)))
    m = EmbeddingMatrix(["a"], np.ones((1, 2)))
    with pytest.raises(ValueError):
        m.values[0, 0] = 5.0  # immutable


def _roundtrip(m, tmp_path, name="m.mev"):
    path = tmp_path / name
    write_store(m, path)
    back = read_store(path)
    assert back.ids == m.ids
    assert back.dim == m.dim
    assert back.values.tobytes() == m.values.tobytes()
    return path


def test_roundtrip_random(tmp_path):
    rng = np.random.default_rng(0)
    m = EmbeddingMatrix(["x", "y", "z"], rng.normal(size=(3, 4)))
    _roundtrip(m, tmp_path)


def test_roundtrip_zero_rows(tmp_path):
    _roundtrip(EmbeddingMatrix([], np.zeros((0, 5))), tmp_path)


def test_roundtrip_edge_values(tmp_path):
    vals = np.array(
        [[5e-324, -5e-324, 0.0, -0.0], [1.7976931348623157e308, 2.2250738585072014e-308, 1.0, -1.0]]
    )
    _roundtrip(EmbeddingMatrix(["tiny", "huge"], vals), tmp_path)


def test_truncated_payload_names_byte_counts(tmp_path):
    m = EmbeddingMatrix(["a", "b"], np.ones((2, 3)))
    path = _roundtrip(m, tmp_path)
    raw = path.read_bytes()
    path.write_bytes(raw[:-10])
    with pytest.raises(StoreError, match=r"truncated payload: expected 48 bytes, got 38"):
        read_store(path)


def test_bad_magic_and_trailing(tmp_path):
    m = EmbeddingMatrix(["a"], np.ones((1, 1)))
    path = _roundtrip(m, tmp_path)
    raw = path.read_bytes()
    path.write_bytes(b"NOPE" + raw[4:])
    with pytest.raises(StoreError, match="bad magic"):
        read_store(path)
    path.write_bytes(raw + b"\x00")
    with pytest.raises(StoreError, match="trailing data"):
        read_store(path)


def test_duplicate_ids_in_file(tmp_path):
    path = tmp_path / "dup.mev"
    parts = [b"MEV1", struct.pack("<I", 1), struct.pack("<Q", 2)]
    for rid in (b"a", b"a"):
        parts.append(struct.pack("<I", len(rid)) + rid)
    parts.append(np.ones(2).astype("<f8").tobytes())
    path.write_bytes(b"".join(parts))
    with pytest.raises(StoreError, match="duplicate"):
        read_store(path)


def test_roundtrip_property_random_shapes(tmp_path):
    rng = np.random.default_rng(42)
    for i in range(25):
        rows = int(rng.integers(0, 8))
        dim = int(rng.integers(1, 6))
        vals = rng.normal(size=(rows, dim)) * 10.0 ** rng.integers(-300, 300)
        m = EmbeddingMatrix([f"id{j}" for j in range(rows)], vals)
        _roundtrip(m, tmp_path, name=f"m{i}.mev")


# --- knn ---


def test_knn_duplicate_row_scores_one():
    m = EmbeddingMatrix(["x", "y", "z"], np.array([[1.0, 2.0], [1.0, 2.0], [-5.0, 1.0]]))
    (top_id, top_score), = knn_query(m, "x", 1, metric="cosine")
    assert top_id == "y"
    assert abs(top_score - 1.0) < 1e-12


def test_knn_orthogonal_one_hot():
    m = EmbeddingMatrix(["a", "b", "c"], np.eye(3))
    result = knn_query(m, "a", 2, metric="cosine")
    assert [rid for rid, _ in result] == ["b", "c"]  # tie broken by id
    assert all(score == 0.0 for _, score in result)


def _bf_cosine(u, v):
    nu = math.sqrt(sum(x * x for x in u))
    nv = math.sqrt(sum(x * x for x in v))
    if nu == 0 or nv == 0:
        return 0.0
    return sum(a * b for a, b in zip(u, v)) / (nu * nv)


def _bf_pearson(u, v):
    mu = sum(u) / len(u)
    mv = sum(v) / len(v)
    return _bf_cosine([x - mu for x in u], [x - mv for x in v])


@pytest.mark.parametrize("metric,bf", [("cosine", _bf_cosine), ("pearson", _bf_pearson)])
def test_knn_matches_bruteforce(metric, bf):
    rng = np.random.default_rng(7)
    vals = rng.normal(size=(5, 6))
    ids = [f"doc{i}" for i in range(5)]
    m = EmbeddingMatrix(ids, vals)
    for qi, qid in enumerate(ids):
        expected = sorted(
            ((rid, bf(vals[qi].tolist(), vals[i].tolist())) for i, rid in enumerate(ids) if i != qi),
            key=lambda p: (-p[1], p[0]),
        )
        got = knn_query(m, qid, 4, metric=metric)
        assert [rid for rid, _ in got] == [rid for rid, _ in expected]
        for (_, s1), (_, s2) in zip(got, expected):
            assert abs(s1 - s2) < 1e-12


def test_knn_self_exclusion_and_self_similarity():
    rng = np.random.default_rng(8)
    m = EmbeddingMatrix([f"d{i}" for i in range(6)], rng.normal(size=(6, 4)))
    for rid in m.ids:
        result = knn_query(m, rid, 5, metric="pearson")
        assert rid not in [r for r, _ in result]
    # cosine(u,u)=1, pearson(u,u)=1 for valid u
    u = m.values[0]
    assert abs(_bf_cosine(u.tolist(), u.tolist()) - 1.0) < 1e-12


def test_knn_errors():
    m = EmbeddingMatrix(["a", "b"], np.eye(2))
    with pytest.raises(KeyError, match="unknown id"):
        knn_query(m, "missing", 1)
    with pytest.raises(ValueError, match="k must be"):
        knn_query(m, "a", 2)
    with pytest.raises(ValueError, match="metric"):
        knn_query(m, "a", 1, metric="euclidean")
