"""Dense embedding matrices: input assembly, binary on-disk store, exhaustive k-NN.

Store layout (little-endian, bit-exact):
    magic b"MEV1" | dim uint32 | rows uint64 |
    per row: id byte-length uint32 + UTF-8 id bytes |
    rows*dim float64 values, row-major
"""

from __future__ import annotations

import os
import struct
import tempfile
import warnings
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .corpus.records import AbstractRecord

STORE_MAGIC = b"MEV1"


class StoreError(Exception):
    """Malformed or unreadable embedding store file."""


def assemble_input(record: "AbstractRecord") -> str:
    """Build the encoder input string: title, separator token, abstract.

    The leading classification token is NOT added here; each encoder's
    tokenizer owns its own special-token convention. Text containing a
    literal "[SEP]" is passed through unescaped but flagged with a warning.
    """
    if "[SEP]" in record.title or "[SEP]" in record.abstract:
        warnings.warn(
            f"record {record.id}: text contains a literal [SEP] token; "
            "it will collide with the separator",
            UserWarning,
            stacklevel=2,
        )
    return f"{record.title} [SEP] {record.abstract}"


class EmbeddingMatrix:
    """Immutable row-per-document matrix of float64 embeddings keyed by id."""

    __slots__ = ("ids", "values", "_index")

    def __init__(self, ids, values):
        values = np.ascontiguousarray(values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError(f"values must be 2-D, got shape {values.shape}")
        ids = tuple(str(i) for i in ids)
        if len(ids) != values.shape[0]:
            raise ValueError(f"{len(ids)} ids for {values.shape[0]} rows")
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate ids")
        if values.size and not np.isfinite(values).all():
            raise ValueError("non-finite values")
        values.setflags(write=False)
        self.ids = ids
        self.values = values
        self._index = {rid: k for k, rid in enumerate(ids)}

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, rid: str) -> bool:
        return rid in self._index

    def index_of(self, rid: str) -> int:
        try:
            return self._index[rid]
        except KeyError:
            raise KeyError(f"unknown id: {rid!r}") from None

    def row(self, rid: str) -> np.ndarray:
        return self.values[self.index_of(rid)]


def write_store(matrix: EmbeddingMatrix, path) -> None:
    """Write a matrix to `path` atomically (temp file + rename)."""
    path = os.fspath(path)
    parts = [STORE_MAGIC, struct.pack("<I", matrix.dim), struct.pack("<Q", len(matrix))]
    for rid in matrix.ids:
        raw = rid.encode("utf-8")
        parts.append(struct.pack("<I", len(raw)))
        parts.append(raw)
    parts.append(matrix.values.astype("<f8", copy=False).tobytes(order="C"))
    payload = b"".join(parts)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mev-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_store(path) -> EmbeddingMatrix:
    """Read a store file; the result is bit-identical to what was written."""
    with open(path, "rb") as fh:
        buf = fh.read()
    if len(buf) < 16:
        raise StoreError(f"truncated header: {len(buf)} bytes")
    if buf[:4] != STORE_MAGIC:
        raise StoreError(f"bad magic: expected {STORE_MAGIC!r}, got {buf[:4]!r}")
    dim = struct.unpack_from("<I", buf, 4)[0]
    rows = struct.unpack_from("<Q", buf, 8)[0]
    off = 16
    ids = []
    for _ in range(rows):
        if off + 4 > len(buf):
            raise StoreError("truncated id table")
        (id_len,) = struct.unpack_from("<I", buf, off)
        off += 4
        if off + id_len > len(buf):
            raise StoreError("truncated id table")
        ids.append(buf[off : off + id_len].decode("utf-8"))
        off += id_len
    expected = rows * dim * 8
    actual = len(buf) - off
    if actual < expected:
        raise StoreError(f"truncated payload: expected {expected} bytes, got {actual}")
    if actual > expected:
        raise StoreError(f"trailing data: expected {expected} bytes, got {actual}")
    values = np.frombuffer(buf, dtype="<f8", count=rows * dim, offset=off)
    values = values.reshape(rows, dim).copy()
    try:
        return EmbeddingMatrix(ids, values)
    except ValueError as exc:
        raise StoreError(str(exc)) from None


def _scores_against_all(matrix: EmbeddingMatrix, qi: int, metric: str) -> np.ndarray:
    x = matrix.values
    if metric == "pearson":
        # correlation = cosine after per-row centering
        x = x - x.mean(axis=1, keepdims=True)
    elif metric != "cosine":
        raise ValueError(f"unknown metric: {metric!r}")
    q = x[qi]
    norms = np.linalg.norm(x, axis=1)
    qn = norms[qi]
    denom = norms * qn
    with np.errstate(divide="ignore", invalid="ignore"):
        scores = np.where(denom > 0, x @ q / np.where(denom > 0, denom, 1.0), 0.0)
    return scores


def knn_query(
    matrix: EmbeddingMatrix, query_id: str, k: int, metric: str = "cosine"
) -> list[tuple[str, float]]:
    """Exhaustive nearest-neighbor query, self excluded.

    Returns k (id, score) pairs in non-increasing score order, ties broken by
    ascending id. Rows with zero norm (cosine) or zero variance (pearson)
    score 0 against everything.
    """
    qi = matrix.index_of(query_id)
    n = len(matrix)
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    scores = _scores_against_all(matrix, qi, metric)
    ranked = sorted(
        ((rid, float(scores[i])) for i, rid in enumerate(matrix.ids) if i != qi),
        key=lambda pair: (-pair[1], pair[0]),
    )
    return ranked[:k]
