"""Run manifests: enough provenance to reproduce any pipeline invocation."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from . import __version__


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(os.fspath(path), "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(
    primary_output,
    subcommand: str,
    config: dict,
    inputs,
    outputs,
    seed: int | None = None,
) -> Path:
    """Write `<primary_output>.manifest.json` describing the invocation.

    Contents are deterministic for identical inputs: no timestamps, sorted
    keys, input files identified by path and content hash.
    """
    manifest = {
        "subcommand": subcommand,
        "version": __version__,
        "seed": seed,
        "config": config,
        "inputs": {str(p): sha256_file(p) for p in inputs},
        "outputs": sorted(str(p) for p in outputs),
    }
    path = Path(os.fspath(primary_output) + ".manifest.json")
    path.write_text(
        json.dumps(manifest, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    return path
