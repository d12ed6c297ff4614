"""Batch CLS-embedding exporter for transformer checkpoints.

Reads the canonical abstract-corpus JSONL format and writes the embedding
evaluation toolkit's binary store format, so any checkpoint's frozen
representations can be benchmarked there.
"""

__version__ = "0.1.0"
