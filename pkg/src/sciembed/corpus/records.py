"""Abstract records and the canonical one-JSON-object-per-line corpus format."""

from __future__ import annotations

import datetime as dt
import json
import os
from dataclasses import dataclass, field

VALID_SOURCES = ("pubmed", "arxiv", "synthetic")

# Canonical file schema, in on-disk key order.
CORPUS_FIELDS = (
    "id",
    "title",
    "abstract",
    "journal",
    "source",
    "date",
    "field_labels",
    "subcategories",
)


class CorpusError(Exception):
    """Malformed corpus file or record."""


@dataclass(frozen=True)
class AbstractRecord:
    """One paper: identifiers, text, journal, provenance, and topic labels."""

    id: str
    title: str
    abstract: str
    journal: str
    source: str
    date: dt.date
    field_labels: frozenset[str] = field(default_factory=frozenset)
    subcategories: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.id:
            raise ValueError("empty id")
        if not self.abstract:
            raise ValueError(f"record {self.id}: empty abstract")
        if not self.journal:
            raise ValueError(f"record {self.id}: empty journal")
        if self.source not in VALID_SOURCES:
            raise ValueError(f"record {self.id}: unknown source {self.source!r}")
        if not isinstance(self.date, dt.date):
            raise ValueError(f"record {self.id}: date must be a calendar date")
        object.__setattr__(self, "field_labels", frozenset(self.field_labels))
        object.__setattr__(self, "subcategories", frozenset(self.subcategories))

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "abstract": self.abstract,
            "journal": self.journal,
            "source": self.source,
            "date": self.date.isoformat(),
            "field_labels": sorted(self.field_labels),
            "subcategories": sorted(self.subcategories),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "AbstractRecord":
        missing = [k for k in CORPUS_FIELDS if k not in d]
        if missing:
            raise CorpusError(f"missing fields: {', '.join(missing)}")
        try:
            date = dt.date.fromisoformat(d["date"])
        except (TypeError, ValueError) as exc:
            raise CorpusError(f"bad date {d.get('date')!r}: {exc}") from None
        try:
            return cls(
                id=d["id"],
                title=d["title"],
                abstract=d["abstract"],
                journal=d["journal"],
                source=d["source"],
                date=date,
                field_labels=frozenset(d["field_labels"]),
                subcategories=frozenset(d["subcategories"]),
            )
        except (TypeError, ValueError) as exc:
            raise CorpusError(str(exc)) from None


def write_corpus(records, path) -> None:
    """Write records as UTF-8 JSONL in the canonical field order."""
    path = os.fspath(path)
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json_dict(), ensure_ascii=False) + "\n")


def read_corpus(path) -> list[AbstractRecord]:
    """Read a canonical corpus file, enforcing unique ids."""
    records: list[AbstractRecord] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                payload = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            try:
                rec = AbstractRecord.from_json_dict(payload)
            except CorpusError as exc:
                raise CorpusError(f"{path}:{lineno}: {exc}") from None
            if rec.id in seen:
                raise CorpusError(f"{path}:{lineno}: duplicate id {rec.id!r}")
            seen.add(rec.id)
            records.append(rec)
    return records
