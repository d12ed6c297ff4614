"""Field -> subcategory taxonomies, including the shipped arXiv one."""

from __future__ import annotations

import json
import os
from importlib import resources
from typing import Iterable

from .records import AbstractRecord


class SubcategoryTaxonomy:
    """Ordered mapping from field name to its set of subcategory names."""

    def __init__(self, fields: Iterable[tuple[str, Iterable[str]]]):
        fields = list(fields)
        self._order: tuple[str, ...] = tuple(name for name, _ in fields)
        if len(set(self._order)) != len(self._order):
            raise ValueError("duplicate field names")
        self._subcats = {name: frozenset(subs) for name, subs in fields}

    @property
    def fields(self) -> tuple[str, ...]:
        return self._order

    def subcategories(self, field: str) -> frozenset[str]:
        return self._subcats[field]

    def field_for_label(self, label: str) -> str | None:
        """Match a record field label to a taxonomy field.

        Exact match wins; otherwise a case-insensitive prefix match, so e.g.
        the label "physics" lands on the field "Phys".
        """
        if label in self._subcats:
            return label
        low = label.lower()
        for name in self._order:
            if low == name.lower() or low.startswith(name.lower()):
                return name
        return None

    def violations(self, record: AbstractRecord) -> list[str]:
        """Subcategories of `record` that fall outside its fields' taxonomy."""
        allowed: set[str] = set()
        for label in record.field_labels:
            name = self.field_for_label(label)
            if name is not None:
                allowed |= self._subcats[name]
        return sorted(s for s in record.subcategories if s not in allowed)

    @classmethod
    def from_records(cls, records: Iterable[AbstractRecord]) -> "SubcategoryTaxonomy":
        """Derive a taxonomy from observed labels, fields in sorted order."""
        mapping: dict[str, set[str]] = {}
        for rec in records:
            for label in rec.field_labels:
                mapping.setdefault(label, set()).update(rec.subcategories)
        return cls((name, mapping[name]) for name in sorted(mapping))


def load_taxonomy(path) -> SubcategoryTaxonomy:
    with open(os.fspath(path), "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    return _from_payload(payload)


def load_arxiv_taxonomy() -> SubcategoryTaxonomy:
    """The packaged arXiv taxonomy: CS, Math, Phys, EESS, Econ, Stat."""
    data = resources.files("sciembed.corpus").joinpath("data/arxiv_taxonomy.json")
    return _from_payload(json.loads(data.read_text(encoding="utf-8")))


def _from_payload(payload: dict) -> SubcategoryTaxonomy:
    try:
        fields = [(f["name"], f["subcategories"]) for f in payload["fields"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad taxonomy file structure: {exc}") from None
    return SubcategoryTaxonomy(fields)
