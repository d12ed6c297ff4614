"""Toolkit for benchmarking scientific-abstract embeddings.

Pipeline: ingest or synthesize an abstract corpus, train a journal-supervised
encoder (or import embeddings from elsewhere via the binary store format),
then evaluate the representations with a linear probe, k-means purity, and
subcategory-overlap pair retrieval.
"""

__version__ = "0.1.0"
