"""Corpus construction: parsers, filtering, synthesis, taxonomy, fetching."""

from .arxiv import ArxivParseResult, LineReject, parse_arxiv_metadata
from .fetch import FetchError, FetchSettings, fetch_pubmed
from .filtering import FilterConfig, FilterOutcome, JournalLabelMap, filter_journals
from .pubmed import PubMedParseResult, PubMedXmlError, RecordReject, parse_pubmed_xml
from .records import AbstractRecord, CorpusError, read_corpus, write_corpus
from .synthetic import generate_synthetic_corpus
from .taxonomy import SubcategoryTaxonomy, load_arxiv_taxonomy, load_taxonomy

__all__ = [
    "AbstractRecord",
    "ArxivParseResult",
    "CorpusError",
    "FetchError",
    "FetchSettings",
    "FilterConfig",
    "FilterOutcome",
    "JournalLabelMap",
    "LineReject",
    "PubMedParseResult",
    "PubMedXmlError",
    "RecordReject",
    "SubcategoryTaxonomy",
    "fetch_pubmed",
    "filter_journals",
    "generate_synthetic_corpus",
    "load_arxiv_taxonomy",
    "load_taxonomy",
    "parse_arxiv_metadata",
    "parse_pubmed_xml",
    "read_corpus",
    "write_corpus",
]
