"""Reader for the canonical corpus interchange format (one JSON object/line)."""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class CorpusDoc:
    id: str
    title: str
    abstract: str


def read_corpus(path) -> list[CorpusDoc]:
    docs: list[CorpusDoc] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                payload = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            for key in ("id", "title", "abstract"):
                if key not in payload:
                    raise ValueError(f"{path}:{lineno}: missing field {key!r}")
            doc = CorpusDoc(str(payload["id"]), str(payload["title"]), str(payload["abstract"]))
            if doc.id in seen:
                raise ValueError(f"{path}:{lineno}: duplicate id {doc.id!r}")
            seen.add(doc.id)
            docs.append(doc)
    return docs


def assemble_input(doc: CorpusDoc) -> str:
    """Title, separator token, abstract; the tokenizer prepends its own CLS."""
    return f"{doc.title} [SEP] {doc.abstract}"
