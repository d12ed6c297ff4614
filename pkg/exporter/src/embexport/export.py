"""Batched CLS-representation extraction from a transformer checkpoint."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import assemble_input, read_corpus
from .store import write_store


class ExportError(Exception):
    pass


@dataclass
class ExportJob:
    model_id: str
    corpus_path: str
    output_path: str
    batch_size: int = 16
    max_length: int = 512
    strict: bool = False  # batch size 1: bit-reproducible rows
    use_pooler: bool = False  # pooler output instead of final-layer CLS state

    def __post_init__(self):
        if self.max_length < 16:
            raise ValueError(f"max_length must be >= 16, got {self.max_length}")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


def _load_model(model_id: str):
    import torch
    from transformers import AutoModel, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModel.from_pretrained(model_id)
    except Exception as exc:
        raise ExportError(f"cannot resolve checkpoint {model_id!r}: {exc}") from exc
    model.eval()
    torch.set_grad_enabled(False)
    return tokenizer, model


def export_embeddings(job: ExportJob) -> tuple[list[str], int]:
    """Embed every corpus record and write the store file.

    Input text is title + " [SEP] " + abstract; the checkpoint's own tokenizer
    prepends its classification token and truncation removes tokens from the
    tail, so the abstract is cut before the title ever is. The row is the
    final-layer hidden state at position 0 (or the pooler output with
    use_pooler), upcast to float64. Returns (ids, dim).
    """
    import torch

    docs = read_corpus(job.corpus_path)
    tokenizer, model = _load_model(job.model_id)
    batch = 1 if job.strict else job.batch_size
    rows: list[np.ndarray] = []
    ids = [doc.id for doc in docs]
    for start in range(0, len(docs), batch):
        chunk = docs[start : start + batch]
        enc = tokenizer(
            [assemble_input(d) for d in chunk],
            truncation=True,
            max_length=job.max_length,
            padding=True,
            return_tensors="pt",
        )
        output = model(**enc)
        if job.use_pooler:
            if getattr(output, "pooler_output", None) is None:
                raise ExportError(f"checkpoint {job.model_id!r} has no pooler output")
            reps = output.pooler_output
        else:
            reps = output.last_hidden_state[:, 0, :]
        rows.append(reps.to(torch.float64).cpu().numpy())
    values = (
        np.concatenate(rows, axis=0)
        if rows
        else np.zeros((0, model.config.hidden_size))
    )
    if values.shape[1] != model.config.hidden_size:
        raise ExportError(
            f"output dim {values.shape[1]} does not match checkpoint hidden size "
            f"{model.config.hidden_size}"
        )
    write_store(ids, values, job.output_path)
    return ids, values.shape[1]
