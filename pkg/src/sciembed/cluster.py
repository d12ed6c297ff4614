"""Lloyd k-means with k-means++ seeding, plus the purity-over-k sweep."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import metrics
from .embedstore import EmbeddingMatrix


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    max_iters: int = 300
    rel_tol: float = 1e-6
    seed: int = 0
    init: str = "kmeanspp"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.init not in ("kmeanspp", "random"):
            raise ValueError(f"unknown init {self.init!r}")


@dataclass(frozen=True)
class KMeansResult:
    assignments: np.ndarray
    inertia: float
    n_iters: int
    inertia_trace: tuple[float, ...] = field(default_factory=tuple)


def _as_array(matrix) -> np.ndarray:
    if isinstance(matrix, EmbeddingMatrix):
        return matrix.values
    return np.asarray(matrix, dtype=np.float64)


def _seed_centroids(x: np.ndarray, k: int, init: str, rng) -> np.ndarray:
    n = x.shape[0]
    if init == "random":
        return x[rng.choice(n, size=k, replace=False)].copy()
    centroids = np.empty((k, x.shape[1]))
    centroids[0] = x[rng.integers(n)]
    d2 = ((x - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = rng.choice(n, p=d2 / total)
        else:
            idx = rng.integers(n)  # every point already sits on a centroid
        centroids[j] = x[idx]
        d2 = np.minimum(d2, ((x - centroids[j]) ** 2).sum(axis=1))
    return centroids


def _assign(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # argmin over squared distances via the expansion; exact distances are
    # recomputed afterwards wherever the value matters
    d = (x**2).sum(axis=1, keepdims=True) - 2.0 * x @ centroids.T + (centroids**2).sum(axis=1)
    return np.argmin(d, axis=1)


def kmeans(matrix, cfg: KMeansConfig) -> KMeansResult:
    """Lloyd iterations until relative inertia improvement < cfg.rel_tol.

    Deterministic given cfg.seed. Empty clusters are re-seeded to the point
    currently farthest from its own centroid. Inertia is checked to be
    non-increasing on every iteration.
    """
    x = _as_array(matrix)
    n = x.shape[0]
    if cfg.k > n:
        raise ValueError(f"k={cfg.k} exceeds {n} points")
    rng = np.random.default_rng(cfg.seed)
    centroids = _seed_centroids(x, cfg.k, cfg.init, rng)

    prev = np.inf
    trace: list[float] = []
    assignments = np.zeros(n, dtype=np.int64)
    for iteration in range(1, cfg.max_iters + 1):
        assignments = _assign(x, centroids)
        inertia = float(((x - centroids[assignments]) ** 2).sum())
        if np.isfinite(prev) and inertia > prev * (1 + 1e-9) + 1e-12:
            raise AssertionError(f"inertia increased: {prev} -> {inertia}")
        trace.append(inertia)
        if inertia == 0.0 or (np.isfinite(prev) and prev - inertia < cfg.rel_tol * prev):
            break
        prev = inertia

        counts = np.bincount(assignments, minlength=cfg.k)
        sums = np.zeros_like(centroids)
        np.add.at(sums, assignments, x)
        nonempty = counts > 0
        centroids[nonempty] = sums[nonempty] / counts[nonempty, None]
        empties = np.flatnonzero(~nonempty)
        if empties.size:
            dist_to_own = ((x - centroids[assignments]) ** 2).sum(axis=1)
            for c in empties:
                farthest = int(np.argmax(dist_to_own))
                centroids[c] = x[farthest]
                dist_to_own[farthest] = -1.0
    return KMeansResult(assignments, trace[-1], len(trace), tuple(trace))


def kmeans_best(matrix, cfg: KMeansConfig, n_restarts: int = 1) -> KMeansResult:
    """Lowest-inertia result over restarts seeded cfg.seed, cfg.seed+1, ..."""
    if n_restarts < 1:
        raise ValueError("n_restarts must be >= 1")
    best: KMeansResult | None = None
    for r in range(n_restarts):
        result = kmeans(matrix, replace(cfg, seed=cfg.seed + r))
        if best is None or result.inertia < best.inertia:
            best = result
    return best


def purity_sweep(
    matrix, truth, ks, seed: int = 0, n_restarts: int = 1
) -> list[tuple[int, float]]:
    """Cluster at each k and score purity against the true labels."""
    x = _as_array(matrix)
    truth = list(truth)
    if len(truth) != x.shape[0]:
        raise ValueError(f"{len(truth)} labels for {x.shape[0]} rows")
    rows = []
    for k in ks:
        result = kmeans_best(x, KMeansConfig(k=int(k), seed=seed), n_restarts)
        rows.append((int(k), metrics.purity(result.assignments.tolist(), truth)))
    return rows
