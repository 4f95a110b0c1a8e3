"""Encoder inference and pooling.

Each review is tokenized with the encoder's own tokenizer (truncated at
``max_length``), run through the encoder in eval mode, and its non-padding
token vectors from the selected hidden layer are pooled into one row.
CPU eval-mode inference is deterministic, so identical jobs produce
byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .corpus import read_csv_corpus, read_ott_corpus
from .errors import TokenizationFailure, UnknownModel
from .frve import write_frve

POOLINGS = ("mean", "sum", "concat_truncate")


@dataclass
class ExportJob:
    corpus_path: str
    model_id: str
    output: str
    corpus_kind: str = "ott"  # ott | csv
    layer: str | int = "last"
    pooling: str = "mean"
    max_length: int = 256
    batch_size: int = 16
    text_col: str = "text"  # csv corpora
    concat_tokens: int = 16  # concat_truncate rows hold this many token slots
    extra: dict = field(default_factory=dict)

    def fingerprint(self) -> str:
        blob = json.dumps(
            {
                "model_id": self.model_id,
                "layer": self.layer,
                "pooling": self.pooling,
                "max_length": self.max_length,
            },
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _load_corpus(job: ExportJob) -> list[tuple[str, str]]:
    if job.corpus_kind == "ott":
        return read_ott_corpus(job.corpus_path)
    if job.corpus_kind == "csv":
        return read_csv_corpus(job.corpus_path, text_col=job.text_col)
    raise ValueError(f"unknown corpus kind {job.corpus_kind!r}")


def _load_encoder(model_id: str):
    import torch
    from transformers import AutoModel, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModel.from_pretrained(model_id)
    except (OSError, ValueError, EnvironmentError) as exc:
        raise UnknownModel(f"cannot resolve encoder {model_id!r}: {exc}") from exc
    model.eval()
    torch.set_grad_enabled(False)
    return tokenizer, model


def _select_layer(outputs, layer: str | int):
    if layer == "last":
        return outputs.last_hidden_state
    return outputs.hidden_states[int(layer)]


def _pool_batch(hidden, mask, job: ExportJob) -> np.ndarray:
    """Pool (batch, tokens, dim) hidden states under an attention mask."""
    import torch

    mask_f = mask.unsqueeze(-1).to(hidden.dtype)
    if job.pooling == "mean":
        summed = (hidden * mask_f).sum(dim=1)
        counts = mask_f.sum(dim=1).clamp(min=1.0)
        return (summed / counts).cpu().numpy()
    if job.pooling == "sum":
        return (hidden * mask_f).sum(dim=1).cpu().numpy()
    if job.pooling == "concat_truncate":
        b, _, d = hidden.shape
        k = job.concat_tokens
        out = torch.zeros((b, k * d), dtype=hidden.dtype)
        for row in range(b):
            toks = hidden[row][mask[row].bool()][:k]
            out[row, : toks.numel()] = toks.reshape(-1)
        return out.cpu().numpy()
    raise ValueError(f"unknown pooling {job.pooling!r}")


def export_embeddings(job: ExportJob) -> str:
    """Run the job and write the FRVE file; returns the output path."""
    if job.pooling not in POOLINGS:
        raise ValueError(f"pooling must be one of {POOLINGS}")
    if job.max_length < 1:
        raise ValueError("max_length must be >= 1")
    corpus = _load_corpus(job)
    tokenizer, model = _load_encoder(job.model_id)

    rows: list[np.ndarray] = []
    ids: list[str] = []
    for start in range(0, len(corpus), job.batch_size):
        batch = corpus[start : start + job.batch_size]
        texts = [text for _, text in batch]
        try:
            enc = tokenizer(
                texts,
                padding=True,
                truncation=True,
                max_length=job.max_length,
                return_tensors="pt",
            )
        except Exception:
            # retry one by one so the failing review is named
            for review_id, text in batch:
                try:
                    tokenizer([text], truncation=True, max_length=job.max_length,
                              return_tensors="pt")
                except Exception as exc:
                    raise TokenizationFailure(f"review {review_id}: {exc}") from exc
            raise
        outputs = model(**enc, output_hidden_states=job.layer != "last")
        hidden = _select_layer(outputs, job.layer)
        rows.append(_pool_batch(hidden, enc["attention_mask"], job))
        ids.extend(review_id for review_id, _ in batch)

    values = np.vstack(rows).astype(np.float32)
    write_frve(job.output, ids, values, job.fingerprint())
    return job.output
