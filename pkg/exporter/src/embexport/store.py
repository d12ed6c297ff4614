"""Writer (and validating reader) for the embedding-store binary format.

Layout, little-endian: magic b"MEV1" | dim uint32 | rows uint64 |
per row a uint32 byte-length + UTF-8 id | rows*dim float64, row-major.
"""

from __future__ import annotations

import os
import struct
import tempfile

import numpy as np

MAGIC = b"MEV1"


class StoreFormatError(Exception):
    pass


def write_store(ids: list[str], values: np.ndarray, path) -> None:
    values = np.ascontiguousarray(values, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] != len(ids):
        raise ValueError(f"{len(ids)} ids for array of shape {values.shape}")
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate ids")
    if values.size and not np.isfinite(values).all():
        raise ValueError("non-finite values")
    parts = [MAGIC, struct.pack("<I", values.shape[1]), struct.pack("<Q", len(ids))]
    for rid in ids:
        raw = rid.encode("utf-8")
        parts.append(struct.pack("<I", len(raw)))
        parts.append(raw)
    parts.append(values.astype("<f8", copy=False).tobytes(order="C"))
    path = os.fspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", prefix=".mev-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(b"".join(parts))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_store(path) -> tuple[list[str], np.ndarray]:
    with open(path, "rb") as fh:
        buf = fh.read()
    if len(buf) < 16 or buf[:4] != MAGIC:
        raise StoreFormatError(f"not a store file: {path}")
    dim = struct.unpack_from("<I", buf, 4)[0]
    rows = struct.unpack_from("<Q", buf, 8)[0]
    off = 16
    ids = []
    for _ in range(rows):
        if off + 4 > len(buf):
            raise StoreFormatError("truncated id table")
        (n,) = struct.unpack_from("<I", buf, off)
        off += 4
        ids.append(buf[off : off + n].decode("utf-8"))
        off += n
    expected = rows * dim * 8
    if len(buf) - off != expected:
        raise StoreFormatError(f"payload size mismatch: expected {expected}, got {len(buf) - off}")
    values = np.frombuffer(buf, dtype="<f8", count=rows * dim, offset=off).reshape(rows, dim)
    return ids, values.copy()
