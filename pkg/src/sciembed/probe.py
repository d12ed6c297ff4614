"""Linear evaluation of frozen embeddings.

Multinomial logistic regression trained with plain mini-batch gradient
descent under cross-validation; per-epoch early stopping keeps the snapshot
with the best validation accuracy. Embeddings are standardized per dimension
on each training fold, which makes the protocol invariant to a global rescale
of the embedding matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import metrics
from .embedstore import EmbeddingMatrix
from .encoder import softmax


@dataclass(frozen=True)
class ProbeConfig:
    lr: float = 5e-4
    batch: int = 100
    epochs: int = 5
    folds: int = 4
    regularization: float = 0.0
    runs: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.folds < 2:
            raise ValueError("folds must be >= 2")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch < 1 or self.runs < 1:
            raise ValueError("batch and runs must be >= 1")


@dataclass(frozen=True)
class FoldScore:
    accuracy: float
    macro_f1: float
    best_epoch: int  # 1-based epoch whose snapshot was kept
    val_curve: tuple[float, ...]  # validation accuracy after each epoch


@dataclass(frozen=True)
class ProbeResult:
    per_fold: tuple[FoldScore, ...]
    mean_acc: float
    std_acc: float
    mean_f1: float
    std_f1: float
    runs: int

    def to_json_dict(self) -> dict:
        return {
            "per_fold": [
                {
                    "accuracy": f.accuracy,
                    "macro_f1": f.macro_f1,
                    "best_epoch": f.best_epoch,
                    "val_curve": list(f.val_curve),
                }
                for f in self.per_fold
            ],
            "mean_acc": self.mean_acc,
            "std_acc": self.std_acc,
            "mean_f1": self.mean_f1,
            "std_f1": self.std_f1,
            "runs": self.runs,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ProbeResult":
        folds = tuple(
            FoldScore(f["accuracy"], f["macro_f1"], f["best_epoch"], tuple(f["val_curve"]))
            for f in d["per_fold"]
        )
        return cls(folds, d["mean_acc"], d["std_acc"], d["mean_f1"], d["std_f1"], d["runs"])


def stratified_folds(labels, folds: int, seed: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Deterministic cross-validation splits, class-stratified where possible.

    Classes with at least `folds` members are shuffled and dealt across folds
    (with a per-class rotation so no fold is systematically larger); smaller
    classes are spread round-robin. Validation sets are disjoint and cover
    all indices.
    """
    if folds < 2:
        raise ValueError("folds must be >= 2")
    y = np.asarray(labels)
    rng = np.random.default_rng(seed)
    buckets: list[list[int]] = [[] for _ in range(folds)]
    rotation = 0
    small_counter = 0
    for cls in sorted(np.unique(y).tolist()):
        idx = np.flatnonzero(y == cls)
        perm = rng.permutation(idx)
        if len(idx) >= folds:
            for i, part in enumerate(np.array_split(perm, folds)):
                buckets[(i + rotation) % folds].extend(part.tolist())
            rotation += 1
        else:
            for j in perm.tolist():
                buckets[small_counter % folds].append(j)
                small_counter += 1
    out = []
    all_idx = np.arange(len(y))
    for b in buckets:
        val = np.sort(np.asarray(b, dtype=np.int64))
        train = np.setdiff1d(all_idx, val)
        out.append((train, val))
    return out


def _standardize(train_x: np.ndarray, val_x: np.ndarray):
    mu = train_x.mean(axis=0)
    sigma = train_x.std(axis=0)
    sigma = np.where(sigma > 0, sigma, 1.0)
    return (train_x - mu) / sigma, (val_x - mu) / sigma


def _fit_fold(x_tr, y_tr, x_val, y_val, n_classes, cfg: ProbeConfig, rng) -> FoldScore:
    d = x_tr.shape[1]
    w = np.zeros((d, n_classes))
    b = np.zeros(n_classes)
    best = None  # (acc, epoch, W, b)
    curve = []
    n = len(y_tr)
    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(n)
        for start in range(0, n, cfg.batch):
            idx = order[start : start + cfg.batch]
            xb, yb = x_tr[idx], y_tr[idx]
            probs = softmax(xb @ w + b)
            g = probs
            g[np.arange(len(yb)), yb] -= 1.0
            g /= len(yb)
            gw = xb.T @ g
            if cfg.regularization:
                gw += 2.0 * cfg.regularization * w
            w -= cfg.lr * gw
            b -= cfg.lr * g.sum(axis=0)
        val_acc = metrics.accuracy(np.argmax(x_val @ w + b, axis=1).tolist(), y_val.tolist())
        curve.append(val_acc)
        if best is None or val_acc > best[0]:
            best = (val_acc, epoch, w.copy(), b.copy())
    _, best_epoch, w_star, b_star = best
    preds = np.argmax(x_val @ w_star + b_star, axis=1).tolist()
    truth = y_val.tolist()
    return FoldScore(
        accuracy=metrics.accuracy(preds, truth),
        macro_f1=metrics.macro_f1(preds, truth, n_classes),
        best_epoch=best_epoch,
        val_curve=tuple(curve),
    )


def train_probe(
    embeddings,
    labels,
    cfg: ProbeConfig = ProbeConfig(),
    fixed_splits: list[tuple[np.ndarray, np.ndarray]] | None = None,
) -> ProbeResult:
    """Run the cross-validated linear probe and aggregate accuracy/macro-F1.

    `fixed_splits` replaces the internal cross-validation splits with
    externally supplied (train, validation) index pairs; they are then reused
    for every run.
    """
    x = embeddings.values if isinstance(embeddings, EmbeddingMatrix) else np.asarray(embeddings, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    if len(y) != x.shape[0]:
        raise ValueError(f"{len(y)} labels for {x.shape[0]} embedding rows")
    if len(np.unique(y)) < 2:
        raise ValueError("fewer than 2 classes")
    if x.shape[0] < cfg.folds:
        raise ValueError(f"need at least {cfg.folds} rows for {cfg.folds}-fold CV")
    n_classes = int(y.max()) + 1
    scores: list[FoldScore] = []
    for run in range(cfg.runs):
        splits = fixed_splits or stratified_folds(y, cfg.folds, cfg.seed + run)
        for fold_idx, (train_idx, val_idx) in enumerate(splits):
            x_tr, x_val = _standardize(x[train_idx], x[val_idx])
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=cfg.seed, spawn_key=(run, fold_idx))
            )
            scores.append(
                _fit_fold(x_tr, y[train_idx], x_val, y[val_idx], n_classes, cfg, rng)
            )
    accs = np.array([s.accuracy for s in scores])
    f1s = np.array([s.macro_f1 for s in scores])
    return ProbeResult(
        per_fold=tuple(scores),
        mean_acc=float(accs.mean()),
        std_acc=float(accs.std()),
        mean_f1=float(f1s.mean()),
        std_f1=float(f1s.std()),
        runs=cfg.runs,
    )
