"""Scoring functions shared by the evaluation pipelines.

All functions are pure, accept plain sequences or numpy arrays, and raise
ValueError on malformed input instead of guessing.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.special import stdtr


def _check_lengths(a, b) -> None:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")


def accuracy(predictions: Sequence[int], truth: Sequence[int]) -> float:
    """Fraction of positions where prediction equals truth."""
    _check_lengths(predictions, truth)
    if len(truth) == 0:
        raise ValueError("empty inputs")
    p = np.asarray(predictions)
    t = np.asarray(truth)
    return float(np.count_nonzero(p == t)) / len(t)


def macro_f1(predictions: Sequence[int], truth: Sequence[int], n_classes: int) -> float:
    """Unweighted mean of per-class F1.

    Classes absent from both predictions and truth are skipped. A class whose
    precision or recall has a zero denominator contributes F1 = 0.
    """
    _check_lengths(predictions, truth)
    if len(truth) == 0:
        raise ValueError("empty inputs")
    p = np.asarray(predictions, dtype=np.int64)
    t = np.asarray(truth, dtype=np.int64)
    for name, arr in (("predictions", p), ("truth", t)):
        if arr.size and (arr.min() < 0 or arr.max() >= n_classes):
            raise ValueError(f"{name} contain labels outside [0, {n_classes})")
    f1s = []
    for c in range(n_classes):
        tp = int(np.count_nonzero((p == c) & (t == c)))
        fp = int(np.count_nonzero((p == c) & (t != c)))
        fn = int(np.count_nonzero((p != c) & (t == c)))
        if tp == 0 and fp == 0 and fn == 0:
            continue  # class absent on both sides
        if tp + fp == 0 or tp + fn == 0:
            f1s.append(0.0)
            continue
        prec = tp / (tp + fp)
        rec = tp / (tp + fn)
        f1s.append(0.0 if prec + rec == 0 else 2 * prec * rec / (prec + rec))
    if not f1s:
        raise ValueError("no classes present")
    return float(sum(f1s) / len(f1s))


def pearson(u: Sequence[float], v: Sequence[float]) -> float:
    """Pearson correlation between two equal-length vectors.

    Coordinates are treated as samples; constant vectors are rejected.
    """
    _check_lengths(u, v)
    ua = np.asarray(u, dtype=np.float64)
    va = np.asarray(v, dtype=np.float64)
    if ua.size < 2:
        raise ValueError("need at least 2 coordinates")
    uc = ua - ua.mean()
    vc = va - va.mean()
    nu = float(np.linalg.norm(uc))
    nv = float(np.linalg.norm(vc))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("zero variance vector")
    return float(np.dot(uc, vc) / (nu * nv))


def purity(cluster_assignments: Sequence, truth: Sequence[int]) -> float:
    """Accuracy after mapping each cluster to its most frequent true class."""
    _check_lengths(cluster_assignments, truth)
    n = len(truth)
    if n == 0:
        raise ValueError("empty inputs")
    counts: dict = {}
    for c, t in zip(cluster_assignments, truth):
        per_cluster = counts.setdefault(c, {})
        per_cluster[t] = per_cluster.get(t, 0) + 1
    hits = sum(max(per_cluster.values()) for per_cluster in counts.values())
    return hits / n


def average_precision(ranked_labels: Sequence[int]) -> float:
    """Mean precision at the rank of each positive, for labels in rank order."""
    labels = list(ranked_labels)
    if any(l not in (0, 1) for l in labels):
        raise ValueError("labels must be 0 or 1")
    n_pos = sum(labels)
    if n_pos == 0:
        raise ValueError("no positive labels")
    seen = 0
    total = 0.0
    for k, lab in enumerate(labels, start=1):
        if lab:
            seen += 1
            total += seen / k
    return total / n_pos


def auc(scores: Sequence[float], labels: Sequence[int]) -> float:
    """Mann-Whitney AUC: P(score_pos > score_neg), ties counted 1/2."""
    _check_lengths(scores, labels)
    s = np.asarray(scores, dtype=np.float64)
    y = np.asarray(labels)
    if any(l not in (0, 1) for l in y.tolist()):
        raise ValueError("labels must be 0 or 1")
    n_pos = int(np.count_nonzero(y == 1))
    n_neg = int(np.count_nonzero(y == 0))
    if n_pos == 0 or n_neg == 0:
        raise ValueError("both classes must be present")
    order = np.argsort(s, kind="stable")
    ranks = np.empty(len(s), dtype=np.float64)
    sorted_scores = s[order]
    i = 0
    while i < len(s):
        j = i
        while j + 1 < len(s) and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        # 1-based ranks i+1..j+1 share the average rank
        ranks[order[i : j + 1]] = (i + j + 2) / 2.0
        i = j + 1
    rank_sum_pos = float(ranks[y == 1].sum())
    u = rank_sum_pos - n_pos * (n_pos + 1) / 2.0
    return u / (n_pos * n_neg)


def unpaired_t_test(
    a: Sequence[float], b: Sequence[float], welch: bool = False
) -> tuple[float, float]:
    """Two-sided two-sample t-test; pooled variance by default, Welch on request.

    Returns (t, p). Zero variance in both samples yields (0, 1) when the means
    agree and an error otherwise.
    """
    aa = np.asarray(a, dtype=np.float64)
    bb = np.asarray(b, dtype=np.float64)
    for name, arr in (("a", aa), ("b", bb)):
        if arr.size < 2:
            raise ValueError(f"sample {name} needs at least 2 values")
        if not np.isfinite(arr).all():
            raise ValueError(f"sample {name} contains non-finite values")
    na, nb = aa.size, bb.size
    var_a = float(aa.var(ddof=1))
    var_b = float(bb.var(ddof=1))
    if var_a == 0.0 and var_b == 0.0:
        if aa[0] == bb[0]:
            return 0.0, 1.0
        raise ValueError("degenerate: zero variance with unequal means")
    mean_diff = float(aa.mean() - bb.mean())
    if welch:
        se2_a = var_a / na
        se2_b = var_b / nb
        se = math.sqrt(se2_a + se2_b)
        df = (se2_a + se2_b) ** 2 / (
            se2_a**2 / (na - 1) + se2_b**2 / (nb - 1)
        )
    else:
        df = na + nb - 2
        sp2 = ((na - 1) * var_a + (nb - 1) * var_b) / df
        se = math.sqrt(sp2 * (1.0 / na + 1.0 / nb))
    t = mean_diff / se
    p = 2.0 * float(stdtr(df, -abs(t)))
    return t, p
