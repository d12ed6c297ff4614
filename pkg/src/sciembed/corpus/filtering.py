"""Journal-level corpus filtering and the journal -> class-index map."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .records import AbstractRecord


@dataclass(frozen=True)
class FilterConfig:
    max_per_journal: int = 300
    min_per_journal: int = 100
    required_recent_year: int = 2021

    def __post_init__(self):
        if not self.max_per_journal >= self.min_per_journal >= 1:
            raise ValueError(
                "need max_per_journal >= min_per_journal >= 1, got "
                f"{self.max_per_journal} / {self.min_per_journal}"
            )


class JournalLabelMap:
    """Bijection between journal names and contiguous class indices."""

    def __init__(self, journals: Iterable[str]):
        names = list(journals)
        if len(set(names)) != len(names):
            raise ValueError("duplicate journal names")
        self._index = {name: i for i, name in enumerate(names)}
        self._names = tuple(names)

    @classmethod
    def from_journals(cls, journals: Iterable[str]) -> "JournalLabelMap":
        """Build over the distinct journal names in lexicographic order."""
        return cls(sorted(set(journals)))

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, journal: str) -> bool:
        return journal in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, JournalLabelMap) and self._names == other._names

    def index_of(self, journal: str) -> int:
        try:
            return self._index[journal]
        except KeyError:
            raise KeyError(f"unknown journal: {journal!r}") from None

    def name_of(self, index: int) -> str:
        return self._names[index]

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    def save(self, path) -> None:
        with open(os.fspath(path), "w", encoding="utf-8") as fh:
            json.dump({name: i for i, name in enumerate(self._names)}, fh,
                      ensure_ascii=False, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "JournalLabelMap":
        with open(os.fspath(path), "r", encoding="utf-8") as fh:
            mapping = json.load(fh)
        names = [None] * len(mapping)
        for name, idx in mapping.items():
            if not isinstance(idx, int) or not 0 <= idx < len(mapping) or names[idx] is not None:
                raise ValueError(f"label map indices not a bijection onto 0..{len(mapping) - 1}")
            names[idx] = name
        return cls(names)


class FilterOutcome(NamedTuple):
    records: list[AbstractRecord]
    labels: JournalLabelMap


def filter_journals(records, cfg: FilterConfig = FilterConfig()) -> FilterOutcome:
    """Drop sparse or stale journals, cap the rest, and build the label map.

    A journal survives when it has at least cfg.min_per_journal records and at
    least one record dated in cfg.required_recent_year. Surviving journals are
    truncated to cfg.max_per_journal records, keeping the most recent by date
    with ties broken by ascending id; if that cut would drop every record from
    the required year, the most recent such record replaces the oldest kept
    one, which keeps the filter idempotent. Record order in the output follows
    the input. The label map covers surviving journals in lexicographic order.
    """
    by_journal: dict[str, list[AbstractRecord]] = {}
    for rec in records:
        by_journal.setdefault(rec.journal, []).append(rec)

    keep_ids: set[str] = set()
    survivors: list[str] = []
    for journal, recs in by_journal.items():
        if len(recs) < cfg.min_per_journal:
            continue
        recent = [r for r in recs if r.date.year == cfg.required_recent_year]
        if not recent:
            continue
        survivors.append(journal)
        ranked = sorted(recs, key=lambda r: (r.date, _neg_id_key(r.id)), reverse=True)
        # reverse=True on (date, reversed-id) == most recent first, id ascending
        kept = ranked[: cfg.max_per_journal]
        if not any(r.date.year == cfg.required_recent_year for r in kept):
            newest_recent = sorted(
                recent, key=lambda r: (r.date, _neg_id_key(r.id)), reverse=True
            )[0]
            kept[-1] = newest_recent
        keep_ids.update(r.id for r in kept)

    if not survivors:
        raise ValueError("no journals survive filter")

    filtered = [r for r in records if r.id in keep_ids]
    return FilterOutcome(filtered, JournalLabelMap.from_journals(survivors))


class _neg_id_key:
    """Inverts string ordering so reverse=True sorting leaves ids ascending."""

    __slots__ = ("value",)

    def __init__(self, value: str):
        self.value = value

    def __lt__(self, other: "_neg_id_key") -> bool:
        return self.value > other.value

    def __eq__(self, other) -> bool:
        return self.value == other.value
