"""Parser for PubMed e-utils fetch XML."""

from __future__ import annotations

import datetime as dt
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .records import AbstractRecord

_MONTHS = {
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "may": 5, "jun": 6,
    "jul": 7, "aug": 8, "sep": 9, "oct": 10, "nov": 11, "dec": 12,
}


class PubMedXmlError(Exception):
    """Malformed XML document, reported with a byte offset."""


@dataclass(frozen=True)
class RecordReject:
    position: int  # 0-based article index within the document
    pmid: str | None
    reason: str


@dataclass
class PubMedParseResult:
    records: list[AbstractRecord] = field(default_factory=list)
    skipped_no_abstract: int = 0
    skipped_non_english: int = 0
    rejects: list[RecordReject] = field(default_factory=list)

    @property
    def skipped(self) -> int:
        return self.skipped_no_abstract + self.skipped_non_english


def _byte_offset(data: bytes, line: int, column: int) -> int:
    lines = data.split(b"\n")
    return sum(len(l) + 1 for l in lines[: line - 1]) + column


def _text(elem) -> str:
    if elem is None:
        return ""
    return "".join(elem.itertext()).strip()


def _parse_pubdate(article) -> dt.date | None:
    pubdate = article.find(".//Journal/JournalIssue/PubDate")
    if pubdate is None:
        return None
    year_text = _text(pubdate.find("Year"))
    if not year_text:
        # MedlineDate strings look like "2020 Nov-Dec"; take the year
        medline = _text(pubdate.find("MedlineDate"))
        year_text = next((tok for tok in medline.split() if tok.isdigit() and len(tok) == 4), "")
    if not year_text.isdigit():
        return None
    month_text = _text(pubdate.find("Month")).lower()
    month = _MONTHS.get(month_text[:3], 0) or (int(month_text) if month_text.isdigit() else 1)
    day_text = _text(pubdate.find("Day"))
    day = int(day_text) if day_text.isdigit() else 1
    try:
        return dt.date(int(year_text), min(max(month, 1), 12), min(max(day, 1), 28))
    except ValueError:
        return None


def parse_pubmed_xml(xml_document: bytes) -> PubMedParseResult:
    """Parse one e-utils fetch page into abstract records.

    Articles without an abstract, or whose Language element says they are not
    English, are skipped and counted. Articles missing a PMID, journal title,
    or parseable publication date are rejected into the report. Document
    order is preserved. Malformed XML raises PubMedXmlError with the byte
    offset of the failure; this function never raises on weird-but-well-formed
    content.
    """
    if isinstance(xml_document, str):
        xml_document = xml_document.encode("utf-8")
    try:
        root = ET.fromstring(xml_document)
    except ET.ParseError as exc:
        line, column = exc.position
        offset = _byte_offset(xml_document, line, column)
        raise PubMedXmlError(f"malformed XML at byte {offset}: {exc.msg}") from None

    result = PubMedParseResult()
    for pos, article in enumerate(root.iter("PubmedArticle")):
        pmid = _text(article.find(".//MedlineCitation/PMID")) or None
        abstract = " ".join(
            part
            for part in (_text(a) for a in article.findall(".//Abstract/AbstractText"))
            if part
        )
        if not abstract:
            result.skipped_no_abstract += 1
            continue
        language = _text(article.find(".//Article/Language"))
        if language and language.lower() != "eng":
            result.skipped_non_english += 1
            continue
        if pmid is None:
            result.rejects.append(RecordReject(pos, None, "missing PMID"))
            continue
        journal = _text(article.find(".//Journal/Title"))
        if not journal:
            result.rejects.append(RecordReject(pos, pmid, "missing journal title"))
            continue
        date = _parse_pubdate(article)
        if date is None:
            result.rejects.append(RecordReject(pos, pmid, "missing or unparseable publication date"))
            continue
        title = _text(article.find(".//ArticleTitle"))
        result.records.append(
            AbstractRecord(
                id=pmid,
                title=title,
                abstract=abstract,
                journal=journal,
                source="pubmed",
                date=date,
            )
        )
    return result
