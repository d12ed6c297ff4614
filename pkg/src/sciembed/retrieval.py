"""Pair-retrieval evaluation: label pairs by subcategory overlap, rank by
Pearson correlation of embeddings, score average precision and AUC per field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from . import metrics
from .corpus.records import AbstractRecord
from .corpus.taxonomy import SubcategoryTaxonomy
from .embedstore import EmbeddingMatrix

DEFAULT_MAX_PAIRS = 2_000_000


class ScoredPair(NamedTuple):
    id_a: str
    id_b: str
    score: float
    label: int


@dataclass(frozen=True)
class RankedPairSet:
    field: str
    pairs: tuple[ScoredPair, ...]  # descending score, ties by (id_a, id_b)
    n_pos: int
    n_neg: int
    ap: float
    auc: float


@dataclass(frozen=True)
class FieldRetrievalRow:
    field: str
    present: bool
    ap: float | None = None
    auc: float | None = None
    n_pairs: int = 0
    n_pos: int = 0
    n_neg: int = 0
    reason: str | None = None


def _pair_offset(i: int, n: int) -> int:
    # linear index of (i, i+1) in lexicographic pair order
    return i * (2 * n - i - 1) // 2


def _unrank_pair(t: int, n: int) -> tuple[int, int]:
    i = int((2 * n - 1 - math.isqrt((2 * n - 1) ** 2 - 8 * t)) // 2)
    while _pair_offset(i + 1, n) <= t:
        i += 1
    while _pair_offset(i, n) > t:
        i -= 1
    j = i + 1 + (t - _pair_offset(i, n))
    return i, j


def build_pairs(
    records: list[AbstractRecord], max_pairs: int = DEFAULT_MAX_PAIRS, seed: int = 0
) -> list[tuple[str, str, int]]:
    """All unordered record pairs labeled by subcategory overlap.

    When the pair count exceeds max_pairs, a uniform sample of max_pairs
    distinct pairs is drawn deterministically from the seed. Output pairs are
    (id_a, id_b, label) with id_a < id_b, in ascending (id_a, id_b) order;
    label is 1 iff the two subcategory sets intersect.
    """
    if len(records) < 2:
        raise ValueError("need at least 2 records to build pairs")
    common = frozenset.intersection(*(r.field_labels for r in records))
    if not common:
        raise ValueError("records do not share a field label")
    for r in records:
        if not r.subcategories:
            raise ValueError(f"record {r.id} has no subcategories")
    ordered = sorted(records, key=lambda r: r.id)
    n = len(ordered)
    total = n * (n - 1) // 2
    if total <= max_pairs:
        indices: Iterable[tuple[int, int]] = (
            (i, j) for i in range(n) for j in range(i + 1, n)
        )
    else:
        rng = np.random.default_rng(seed)
        chosen = np.sort(rng.choice(total, size=max_pairs, replace=False))
        indices = (_unrank_pair(int(t), n) for t in chosen)
    out = []
    for i, j in indices:
        a, b = ordered[i], ordered[j]
        label = 1 if a.subcategories & b.subcategories else 0
        out.append((a.id, b.id, label))
    return out


def score_field(
    embeddings: EmbeddingMatrix, pairs, field: str = ""
) -> RankedPairSet:
    """Score pairs by Pearson correlation of their rows and rank them.

    Ranking is by descending score with ties kept in ascending (id_a, id_b)
    order; average precision is computed on that ranking and AUC on the raw
    scores with ties counted 1/2.
    """
    ordered = sorted(pairs, key=lambda p: (p[0], p[1]))
    labels = [int(p[2]) for p in ordered]
    if len(set(labels)) < 2:
        raise ValueError("pair labels must include both classes")
    x = embeddings.values
    idx_a = np.array([embeddings.index_of(p[0]) for p in ordered])
    idx_b = np.array([embeddings.index_of(p[1]) for p in ordered])
    centered = x - x.mean(axis=1, keepdims=True)
    norms = np.linalg.norm(centered, axis=1)
    needed = np.unique(np.concatenate([idx_a, idx_b]))
    bad = needed[norms[needed] == 0.0]
    if bad.size:
        raise ValueError(f"zero variance row: {embeddings.ids[int(bad[0])]!r}")
    scores = (centered[idx_a] * centered[idx_b]).sum(axis=1) / (norms[idx_a] * norms[idx_b])
    order = np.argsort(-scores, kind="stable")
    ranked = tuple(
        ScoredPair(ordered[i][0], ordered[i][1], float(scores[i]), labels[i])
        for i in order.tolist()
    )
    ranked_labels = [p.label for p in ranked]
    return RankedPairSet(
        field=field,
        pairs=ranked,
        n_pos=sum(labels),
        n_neg=len(labels) - sum(labels),
        ap=metrics.average_precision(ranked_labels),
        auc=metrics.auc(scores.tolist(), labels),
    )


def evaluate_all_fields(
    records: list[AbstractRecord],
    embeddings: EmbeddingMatrix,
    taxonomy: SubcategoryTaxonomy,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    seed: int = 0,
) -> list[FieldRetrievalRow]:
    """One retrieval row per taxonomy field, in taxonomy order.

    A field with fewer than 2 eligible records (with subcategories and an
    embedding row), or whose pair labels are single-class, is marked absent
    instead of failing the whole table.
    """
    grouped: dict[str, list[AbstractRecord]] = {name: [] for name in taxonomy.fields}
    for rec in records:
        if not rec.subcategories or rec.id not in embeddings:
            continue
        matched = {taxonomy.field_for_label(label) for label in rec.field_labels}
        for name in matched:
            if name is not None:
                grouped[name].append(rec)
    rows: list[FieldRetrievalRow] = []
    for name in taxonomy.fields:
        eligible = grouped[name]
        if len(eligible) < 2:
            rows.append(
                FieldRetrievalRow(name, present=False, reason="fewer than 2 eligible records")
            )
            continue
        pairs = build_pairs(eligible, max_pairs=max_pairs, seed=seed)
        labels = {p[2] for p in pairs}
        if len(labels) < 2:
            rows.append(
                FieldRetrievalRow(name, present=False, reason="single-class pair labels")
            )
            continue
        scored = score_field(embeddings, pairs, field=name)
        rows.append(
            FieldRetrievalRow(
                name,
                present=True,
                ap=scored.ap,
                auc=scored.auc,
                n_pairs=len(scored.pairs),
                n_pos=scored.n_pos,
                n_neg=scored.n_neg,
            )
        )
    return rows
