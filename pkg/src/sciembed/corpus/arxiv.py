"""Parser for arXiv metadata snapshots (one JSON object per line)."""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import dataclass, field
from email.utils import parsedate_to_datetime
from typing import Iterable

from .records import AbstractRecord


@dataclass(frozen=True)
class LineReject:
    line: int  # 1-based line number
    reason: str


@dataclass
class ArxivParseResult:
    records: list[AbstractRecord] = field(default_factory=list)
    rejects: list[LineReject] = field(default_factory=list)


def _split_categories(raw) -> list[str]:
    if isinstance(raw, str):
        return raw.split()
    if isinstance(raw, list):
        return [str(c) for c in raw]
    return []


def _parse_date(payload: dict) -> dt.date | None:
    update = payload.get("update_date")
    if isinstance(update, str):
        try:
            return dt.date.fromisoformat(update)
        except ValueError:
            pass
    versions = payload.get("versions")
    if isinstance(versions, list) and versions:
        created = versions[0].get("created") if isinstance(versions[0], dict) else None
        if isinstance(created, str):
            try:
                return parsedate_to_datetime(created).date()
            except (TypeError, ValueError):
                pass
    return None


def parse_arxiv_metadata(lines: Iterable[str]) -> ArxivParseResult:
    """Parse metadata lines into abstract records.

    The major field is the subcategory truncated at the first dot, so
    "cs.LG" yields field "cs" and subcategory "cs.LG"; categories without a
    dot (old-style identifiers) are their own field. Records whose categories
    span several major fields carry all of them. The journal label comes from
    the journal-ref entry; lines without one, or without a usable date, are
    rejected with their line number rather than dropped silently.
    """
    result = ArxivParseResult()
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            result.rejects.append(LineReject(lineno, f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(payload, dict):
            result.rejects.append(LineReject(lineno, "not a JSON object"))
            continue
        missing = [k for k in ("id", "title", "abstract", "categories") if not payload.get(k)]
        if missing:
            result.rejects.append(LineReject(lineno, f"missing fields: {', '.join(missing)}"))
            continue
        categories = _split_categories(payload["categories"])
        if not categories:
            result.rejects.append(LineReject(lineno, "empty categories"))
            continue
        journal = payload.get("journal-ref")
        if not isinstance(journal, str) or not journal.strip():
            result.rejects.append(LineReject(lineno, "missing journal-ref"))
            continue
        date = _parse_date(payload)
        if date is None:
            result.rejects.append(LineReject(lineno, "missing or unparseable date"))
            continue
        fields = frozenset(c.split(".", 1)[0] for c in categories)
        try:
            record = AbstractRecord(
                id=str(payload["id"]),
                title=str(payload["title"]).strip(),
                abstract=str(payload["abstract"]).strip(),
                journal=journal.strip(),
                source="arxiv",
                date=date,
                field_labels=fields,
                subcategories=frozenset(categories),
            )
        except ValueError as exc:
            result.rejects.append(LineReject(lineno, str(exc)))
            continue
        result.records.append(record)
    return result
