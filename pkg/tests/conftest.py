import datetime as dt

import pytest

from sciembed.corpus import AbstractRecord, generate_synthetic_corpus


def make_record(rid="r1", title="T", abstract="A", journal="J", source="pubmed",
                date=dt.date(2021, 1, 1), fields=(), subcats=()):
    return AbstractRecord(
        id=rid, title=title, abstract=abstract, journal=journal, source=source,
        date=date, field_labels=frozenset(fields), subcategories=frozenset(subcats),
    )


@pytest.fixture(scope="session")
def small_corpus():
    """3 fields x 4 journals x 12 docs: enough structure, fast to embed."""
    return generate_synthetic_corpus(3, 4, 12, 600, seed=11)
