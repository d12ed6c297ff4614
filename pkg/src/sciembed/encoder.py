"""Desk-scale text encoder trained with the journal-classification objective.

Architecture: hashed bag-of-tokens features -> one ReLU hidden layer (the
document representation) -> softmax over journal classes, trained with exact
cross-entropy and plain mini-batch gradient descent.
"""

from __future__ import annotations

import hashlib
import os
import re
import struct
import tempfile
from dataclasses import dataclass

import numpy as np

from .embedstore import EmbeddingMatrix, assemble_input

_TOKEN_RE = re.compile(r"[a-z0-9]+")

CHECKPOINT_MAGIC = b"MTP1"


def _hash_token(token: str, seed: int) -> tuple[int, float]:
    """Map a token to (64-bit hash, sign) with a keyed BLAKE2b digest.

    bucket = hash % feature_dim, sign = +1 if digest byte 8 is even else -1.
    This exact scheme is part of the featurize contract.
    """
    digest = hashlib.blake2b(
        token.encode("utf-8"), digest_size=16, key=struct.pack("<q", seed)
    ).digest()
    h = int.from_bytes(digest[:8], "little")
    sign = 1.0 if digest[8] % 2 == 0 else -1.0
    return h, sign


def tokenize(text: str) -> list[str]:
    """Lowercase and split on anything that is not a letter or digit."""
    return _TOKEN_RE.findall(text.lower())


def featurize(text: str, feature_dim: int, seed: int) -> np.ndarray:
    """Signed hashed token counts, L2-normalized.

    Each token contributes sign(token) at bucket hash(token) % feature_dim,
    where hash and sign come from `_hash_token` keyed on `seed`. The empty
    text maps to the zero vector.
    """
    if feature_dim < 2:
        raise ValueError("feature_dim must be >= 2")
    vec = np.zeros(feature_dim, dtype=np.float64)
    for token in tokenize(text):
        h, sign = _hash_token(token, seed)
        vec[h % feature_dim] += sign
    norm = np.linalg.norm(vec)
    if norm > 0:
        vec /= norm
    return vec


@dataclass
class EncoderParams:
    """Trainable parameters plus the hashing seed they were built with."""

    w1: np.ndarray  # (feature_dim, hidden_dim)
    b1: np.ndarray  # (hidden_dim,)
    w2: np.ndarray  # (hidden_dim, n_classes)
    b2: np.ndarray  # (n_classes,)
    seed: int

    def __post_init__(self):
        if self.w1.shape[1] != self.b1.shape[0]:
            raise ValueError("w1/b1 dimension mismatch")
        if self.w2.shape[0] != self.w1.shape[1]:
            raise ValueError("w1/w2 dimension mismatch")
        if self.w2.shape[1] != self.b2.shape[0]:
            raise ValueError("w2/b2 dimension mismatch")
        for name in ("w1", "b1", "w2", "b2"):
            if not np.isfinite(getattr(self, name)).all():
                raise ValueError(f"non-finite values in {name}")

    @property
    def feature_dim(self) -> int:
        return self.w1.shape[0]

    @property
    def hidden_dim(self) -> int:
        return self.w1.shape[1]

    @property
    def n_classes(self) -> int:
        return self.w2.shape[1]

    def copy(self) -> "EncoderParams":
        return EncoderParams(
            self.w1.copy(), self.b1.copy(), self.w2.copy(), self.b2.copy(), self.seed
        )


def init_params(
    feature_dim: int, hidden_dim: int, n_classes: int, seed: int
) -> EncoderParams:
    """He-style scaled Gaussian init for the weights, zero biases."""
    rng = np.random.default_rng(seed)
    w1 = rng.standard_normal((feature_dim, hidden_dim)) * np.sqrt(2.0 / feature_dim)
    w2 = rng.standard_normal((hidden_dim, n_classes)) * np.sqrt(2.0 / hidden_dim)
    return EncoderParams(w1, np.zeros(hidden_dim), w2, np.zeros(n_classes), seed)


def softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax with max subtraction for stability."""
    shifted = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def forward(params: EncoderParams, features: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Hidden representation and class probabilities for one feature vector."""
    features = np.asarray(features, dtype=np.float64)
    if features.shape != (params.feature_dim,):
        raise ValueError(
            f"feature shape {features.shape} does not match feature_dim {params.feature_dim}"
        )
    hidden = np.maximum(features @ params.w1 + params.b1, 0.0)
    probs = softmax(hidden @ params.w2 + params.b2)
    return hidden, probs


def ce_loss(probs: np.ndarray, label: int) -> float:
    """Cross-entropy against a one-hot target: -log(probs[label])."""
    probs = np.asarray(probs, dtype=np.float64)
    if not 0 <= label < probs.shape[0]:
        raise ValueError(f"label {label} outside [0, {probs.shape[0]})")
    return float(-np.log(max(float(probs[label]), 1e-15)))


def _forward_batch(params: EncoderParams, x: np.ndarray):
    z1 = x @ params.w1 + params.b1
    h = np.maximum(z1, 0.0)
    probs = softmax(h @ params.w2 + params.b2)
    return z1, h, probs


def loss_and_grads(params: EncoderParams, x: np.ndarray, y: np.ndarray):
    """Mean cross-entropy over a batch and its gradients per parameter block."""
    n = x.shape[0]
    z1, h, probs = _forward_batch(params, x)
    picked = np.clip(probs[np.arange(n), y], 1e-15, None)
    loss = float(-np.log(picked).mean())
    g_logits = probs.copy()
    g_logits[np.arange(n), y] -= 1.0
    g_logits /= n
    g_w2 = h.T @ g_logits
    g_b2 = g_logits.sum(axis=0)
    g_h = g_logits @ params.w2.T
    g_h[z1 <= 0.0] = 0.0
    g_w1 = x.T @ g_h
    g_b1 = g_h.sum(axis=0)
    return loss, {"w1": g_w1, "b1": g_b1, "w2": g_w2, "b2": g_b2}


@dataclass
class TrainConfig:
    feature_dim: int = 4096
    hidden_dim: int = 64
    lr: float = 2.0
    batch: int = 100
    epochs: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.feature_dim < 2 or self.hidden_dim < 1:
            raise ValueError("bad dimensions")
        if self.batch < 1 or self.epochs < 1:
            raise ValueError("batch and epochs must be >= 1")


def featurize_records(records, feature_dim: int, seed: int) -> np.ndarray:
    """Stack featurize(assemble_input(r)) for every record, in order."""
    out = np.zeros((len(records), feature_dim), dtype=np.float64)
    for i, rec in enumerate(records):
        out[i] = featurize(assemble_input(rec), feature_dim, seed)
    return out


def train(records, labels, cfg: TrainConfig) -> tuple[EncoderParams, list[float]]:
    """Mini-batch gradient descent on mean cross-entropy over journal classes.

    Deterministic given cfg.seed (fixed shuffle, sequential reduction).
    Returns the final parameters and the per-epoch mean training loss trace.
    """
    y = np.empty(len(records), dtype=np.int64)
    for i, rec in enumerate(records):
        try:
            y[i] = labels.index_of(rec.journal)
        except KeyError:
            raise ValueError(f"journal not in label map: {rec.journal!r}") from None
    x = featurize_records(records, cfg.feature_dim, cfg.seed)
    params = init_params(cfg.feature_dim, cfg.hidden_dim, len(labels), cfg.seed)
    rng = np.random.default_rng(cfg.seed)
    n = len(records)
    trace: list[float] = []
    for _ in range(cfg.epochs):
        order = rng.permutation(n)
        loss_sum = 0.0
        for start in range(0, n, cfg.batch):
            idx = order[start : start + cfg.batch]
            loss, grads = loss_and_grads(params, x[idx], y[idx])
            loss_sum += loss * len(idx)
            params.w1 -= cfg.lr * grads["w1"]
            params.b1 -= cfg.lr * grads["b1"]
            params.w2 -= cfg.lr * grads["w2"]
            params.b2 -= cfg.lr * grads["b2"]
        trace.append(loss_sum / n)
    return params, trace


def extract(params: EncoderParams, records) -> EmbeddingMatrix:
    """Hidden-layer representation for each record, keyed by record id."""
    x = featurize_records(records, params.feature_dim, params.seed)
    z1 = x @ params.w1 + params.b1
    hidden = np.maximum(z1, 0.0)
    return EmbeddingMatrix([r.id for r in records], hidden)


def save_params(params: EncoderParams, path) -> None:
    """Checkpoint layout: magic MTP1 | dims uint32 x3 | seed int64 | blocks as float64 LE."""
    path = os.fspath(path)
    header = CHECKPOINT_MAGIC + struct.pack(
        "<IIIq", params.feature_dim, params.hidden_dim, params.n_classes, params.seed
    )
    blocks = b"".join(
        np.ascontiguousarray(block, dtype="<f8").tobytes(order="C")
        for block in (params.w1, params.b1, params.w2, params.b2)
    )
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mtp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(header + blocks)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_params(path) -> EncoderParams:
    with open(path, "rb") as fh:
        buf = fh.read()
    if len(buf) < 24 or buf[:4] != CHECKPOINT_MAGIC:
        raise ValueError(f"not an encoder checkpoint: {path}")
    feature_dim, hidden_dim, n_classes, seed = struct.unpack_from("<IIIq", buf, 4)
    sizes = [
        feature_dim * hidden_dim,
        hidden_dim,
        hidden_dim * n_classes,
        n_classes,
    ]
    expected = 24 + 8 * sum(sizes)
    if len(buf) != expected:
        raise ValueError(f"checkpoint size mismatch: expected {expected} bytes, got {len(buf)}")
    off = 24
    blocks = []
    for count in sizes:
        blocks.append(np.frombuffer(buf, dtype="<f8", count=count, offset=off).copy())
        off += 8 * count
    return EncoderParams(
        blocks[0].reshape(feature_dim, hidden_dim),
        blocks[1],
        blocks[2].reshape(hidden_dim, n_classes),
        blocks[3],
        seed,
    )
