"""PubMed e-utils fetching: ISSN/year queries, paging, rate limiting, replay.

Network configuration comes from the environment:
    EUTILS_BASE_URL   endpoint root (default: the NCBI e-utils URL)
    EUTILS_API_KEY    optional API key appended to every request
    EUTILS_MIN_DELAY  minimum seconds between requests (default 0.34)

Tests and offline runs use replay mode, which substitutes recorded response
pages (page-*.xml files in a directory) for live requests.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator

DEFAULT_BASE_URL = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils"
MAX_BATCH = 200


class FetchError(Exception):
    """HTTP failure that survived retrying."""


@dataclass
class FetchSettings:
    base_url: str = DEFAULT_BASE_URL
    api_key: str | None = None
    min_delay_s: float = 0.34
    max_retries: int = 3

    @classmethod
    def from_env(cls) -> "FetchSettings":
        return cls(
            base_url=os.environ.get("EUTILS_BASE_URL", DEFAULT_BASE_URL),
            api_key=os.environ.get("EUTILS_API_KEY") or None,
            min_delay_s=float(os.environ.get("EUTILS_MIN_DELAY", "0.34")),
        )


def _default_http_get(url: str, params: dict) -> bytes:
    import requests

    response = requests.get(url, params=params, timeout=60)
    response.raise_for_status()
    return response.content


class _Cursor:
    """Persists how many pages a query has already yielded."""

    def __init__(self, path, query_key: dict):
        self.path = Path(path) if path else None
        self.query_key = query_key
        self.pages_yielded = 0
        if self.path and self.path.exists():
            saved = json.loads(self.path.read_text(encoding="utf-8"))
            if {k: saved.get(k) for k in query_key} == query_key:
                self.pages_yielded = int(saved.get("pages_yielded", 0))

    def advance(self) -> None:
        self.pages_yielded += 1
        if self.path:
            payload = dict(self.query_key, pages_yielded=self.pages_yielded)
            self.path.write_text(
                json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8"
            )


def fetch_pubmed(
    issn: str,
    year: int,
    batch_size: int = MAX_BATCH,
    settings: FetchSettings | None = None,
    cursor_path=None,
    replay_dir=None,
    http_get: Callable[[str, dict], bytes] | None = None,
    sleep: Callable[[float], None] = time.sleep,
) -> Iterator[bytes]:
    """Yield raw XML fetch pages for one ISSN/year query.

    At most `batch_size` (<= 200) articles per page. Requests honor the
    configured minimum inter-request delay and are retried with exponential
    backoff before a FetchError surfaces. A cursor file, when given, records
    progress so an interrupted run resumes at the next unseen page. With
    `replay_dir` set, recorded page-*.xml files stand in for the network.
    """
    if not 1 <= batch_size <= MAX_BATCH:
        raise ValueError(f"batch_size must be in [1, {MAX_BATCH}], got {batch_size}")
    cursor = _Cursor(cursor_path, {"issn": issn, "year": int(year), "batch_size": batch_size})

    if replay_dir is not None:
        pages = sorted(Path(replay_dir).glob("page-*.xml"))
        for page in pages[cursor.pages_yielded :]:
            data = page.read_bytes()
            cursor.advance()
            yield data
        return

    settings = settings or FetchSettings.from_env()
    http_get = http_get or _default_http_get
    last_request = [0.0]

    def request(endpoint: str, params: dict) -> bytes:
        if settings.api_key:
            params = dict(params, api_key=settings.api_key)
        delay = settings.min_delay_s - (time.monotonic() - last_request[0])
        if delay > 0:
            sleep(delay)
        failure: Exception | None = None
        for attempt in range(settings.max_retries + 1):
            if attempt:
                sleep(2.0 ** (attempt - 1))
            last_request[0] = time.monotonic()
            try:
                return http_get(f"{settings.base_url}/{endpoint}", params)
            except Exception as exc:  # requests and transport errors alike
                failure = exc
        raise FetchError(
            f"{endpoint} failed after {settings.max_retries + 1} attempts: {failure}"
        )

    term = f"{issn}[ISSN] AND {year}[PDAT]"
    pmids: list[str] = []
    start = 0
    while True:
        raw = request(
            "esearch.fcgi",
            {
                "db": "pubmed",
                "term": term,
                "retmode": "json",
                "retstart": start,
                "retmax": batch_size,
            },
        )
        payload = json.loads(raw)["esearchresult"]
        pmids.extend(payload.get("idlist", []))
        count = int(payload.get("count", 0))
        start += batch_size
        if start >= count or not payload.get("idlist"):
            break

    batches = [pmids[i : i + batch_size] for i in range(0, len(pmids), batch_size)]
    for batch in batches[cursor.pages_yielded :]:
        data = request(
            "efetch.fcgi",
            {"db": "pubmed", "id": ",".join(batch), "retmode": "xml"},
        )
        cursor.advance()
        yield data
