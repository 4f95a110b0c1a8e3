"""Fixed-length review vectors: pooling, a lexical TF-IDF fallback, and the
FRVE embedding container.

FRVE byte layout (all integers little-endian):

    magic    4 bytes    ASCII "FRVE"
    version  u32        1
    n        u64        row count
    d        u64        columns per row
    payload  n*d*4      IEEE-754 binary32, row-major
    ids      n records  { len: u16, id: len bytes UTF-8 }
    tail     1 record   { len: u16, provider fingerprint UTF-8 }

Reading a written file reproduces the matrix bit for bit.
"""

from __future__ import annotations

import hashlib
import json
import struct
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    BadMagic,
    ConfigError,
    DimensionMismatch,
    EmptyText,
    EmptyTokenList,
    EmptyVocabulary,
    IdCountMismatch,
    NonFiniteValue,
    TruncatedPayload,
    UnknownReviewId,
    UnsupportedVersion,
)

FRVE_MAGIC = b"FRVE"
FRVE_VERSION = 1

MEAN = "mean"
SUM = "sum"
CONCAT_TRUNCATE = "concat_truncate"
POOLING_KINDS = (MEAN, SUM, CONCAT_TRUNCATE)


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[str, ...]

    def __post_init__(self):
        if not self.tokens:
            raise EmptyText("no tokens")
        if any(not t for t in self.tokens):
            raise ValueError("tokens must be non-empty strings")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


@dataclass(frozen=True)
class PoolingStrategy:
    kind: str = MEAN
    max_tokens: int = 256

    def __post_init__(self):
        if self.kind not in POOLING_KINDS:
            raise ConfigError(f"unknown pooling kind {self.kind!r}")
        if self.kind == CONCAT_TRUNCATE and self.max_tokens < 1:
            raise ConfigError("concat_truncate needs max_tokens >= 1")


class EmbeddingMatrix:
    """n review vectors (float32 rows) aligned to review ids."""

    def __init__(self, ids: list[str], values: np.ndarray, fingerprint: str = ""):
        values = np.asarray(values, dtype=np.float32)
        if values.ndim != 2:
            raise DimensionMismatch(f"expected a 2-D matrix, got shape {values.shape}")
        if values.shape[1] < 1:
            raise DimensionMismatch("embedding dimension must be >= 1")
        if len(ids) != values.shape[0]:
            raise IdCountMismatch(f"{len(ids)} ids for {values.shape[0]} rows")
        if values.size and not np.all(np.isfinite(values)):
            raise NonFiniteValue("embedding matrix contains NaN or infinity")
        self.ids = list(ids)
        self.values = values
        self.fingerprint = fingerprint

    @property
    def dim(self) -> int:
        return int(self.values.shape[1])

    def __len__(self) -> int:
        return len(self.ids)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EmbeddingMatrix)
            and self.ids == other.ids
            and self.fingerprint == other.fingerprint
            and self.values.shape == other.values.shape
            and bool(np.all(self.values == other.values))
        )


def tokenize(text: str, lowercase: bool = True) -> TokenSequence:
    """Split on whitespace, strip leading/trailing punctuation per token.

    Interior punctuation (hyphens, apostrophes) is kept; tokens that strip
    to nothing are dropped; EmptyText if nothing survives.
    """
    tokens = _tokens(text, lowercase)
    if not tokens:
        raise EmptyText(f"no tokens in {text[:40]!r}")
    return TokenSequence(tokens=tuple(tokens))


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _tokens(text: str, lowercase: bool) -> list[str]:
    out = []
    for raw in text.split():
        start, end = 0, len(raw)
        while start < end and _is_punct(raw[start]):
            start += 1
        while end > start and _is_punct(raw[end - 1]):
            end -= 1
        word = raw[start:end]
        if word:
            out.append(word.lower() if lowercase else word)
    return out


def pool(token_vectors, strategy: PoolingStrategy) -> np.ndarray:
    """Combine per-token vectors into one fixed-length vector."""
    vectors = [np.asarray(v, dtype=np.float64) for v in token_vectors]
    if not vectors:
        raise EmptyTokenList("nothing to pool")
    d = vectors[0].shape[-1]
    for v in vectors:
        if v.ndim != 1 or v.shape[0] != d:
            raise DimensionMismatch(f"token vector of dim {v.shape} vs {d}")
    stack = np.stack(vectors)
    if strategy.kind == MEAN:
        return stack.mean(axis=0)
    if strategy.kind == SUM:
        return stack.sum(axis=0)
    out = np.zeros(strategy.max_tokens * d)
    kept = stack[: strategy.max_tokens]
    out[: kept.size] = kept.reshape(-1)
    return out


@dataclass(frozen=True)
class LexicalConfig:
    min_df: int = 1
    max_features: int | None = None
    lowercase: bool = True

    def __post_init__(self):
        if self.min_df < 1:
            raise ConfigError("min_df must be >= 1")
        if self.max_features is not None and self.max_features < 1:
            raise ConfigError("max_features must be >= 1")


@dataclass
class LexicalVectorizer:
    """TF-IDF over whitespace/punctuation tokens; the self-contained
    substitute for an external sentence encoder.

    idf(t) = ln((1+N)/(1+df(t))) + 1; rows are L2-normalized.
    """

    vocabulary: dict[str, int]
    idf: np.ndarray
    config: LexicalConfig = field(default_factory=LexicalConfig)

    def __post_init__(self):
        if len(self.idf) != len(self.vocabulary):
            raise ValueError("idf length must equal vocabulary size")
        if sorted(self.vocabulary.values()) != list(range(len(self.vocabulary))):
            raise ValueError("vocabulary indices must be 0..V-1 without gaps")
        if len(self.idf) and not np.all(self.idf > 0):
            raise ValueError("idf values must be positive")

    @property
    def dim(self) -> int:
        return len(self.vocabulary)

    def fingerprint(self) -> str:
        blob = json.dumps(
            {
                "kind": "lexical",
                "min_df": self.config.min_df,
                "max_features": self.config.max_features,
                "lowercase": self.config.lowercase,
                "vocabulary": sorted(self.vocabulary, key=self.vocabulary.get),
            },
            sort_keys=True,
            ensure_ascii=True,
        )
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def fit_lexical_vectorizer(train_texts: list[str], config: LexicalConfig | None = None) -> LexicalVectorizer:
    """Build the vocabulary and idf weights from training texts only."""
    config = config or LexicalConfig()
    if not train_texts:
        raise EmptyVocabulary("no training documents")
    n_docs = len(train_texts)
    df: dict[str, int] = {}
    for text in train_texts:
        for tok in set(_tokens(text, config.lowercase)):
            df[tok] = df.get(tok, 0) + 1
    survivors = [t for t, c in df.items() if c >= config.min_df]
    if not survivors:
        raise EmptyVocabulary(f"no token appears in >= {config.min_df} documents")
    if config.max_features is not None and len(survivors) > config.max_features:
        survivors.sort(key=lambda t: (-df[t], t))
        survivors = survivors[: config.max_features]
    survivors.sort()
    vocabulary = {t: i for i, t in enumerate(survivors)}
    idf = np.array(
        [np.log((1.0 + n_docs) / (1.0 + df[t])) + 1.0 for t in survivors],
        dtype=np.float64,
    )
    return LexicalVectorizer(vocabulary=vocabulary, idf=idf, config=config)


def vectorize_lexical(
    vectorizer: LexicalVectorizer,
    texts: list[str],
    ids: list[str] | None = None,
) -> EmbeddingMatrix:
    """tf*idf rows over the fitted vocabulary, L2-normalized.

    Out-of-vocabulary tokens are ignored; a document with no in-vocabulary
    tokens becomes the zero row rather than an error.
    """
    if ids is None:
        ids = [str(i) for i in range(len(texts))]
    vocab = vectorizer.vocabulary
    rows = np.zeros((len(texts), vectorizer.dim), dtype=np.float64)
    for i, text in enumerate(texts):
        for tok in _tokens(text, vectorizer.config.lowercase):
            j = vocab.get(tok)
            if j is not None:
                rows[i, j] += 1.0
        rows[i] *= vectorizer.idf
        norm = np.linalg.norm(rows[i])
        if norm > 0.0:
            rows[i] /= norm
    return EmbeddingMatrix(ids=ids, values=rows.astype(np.float32), fingerprint=vectorizer.fingerprint())


def write_embedding_file(matrix: EmbeddingMatrix, path: str | Path) -> None:
    """Serialize a matrix to the FRVE container."""
    parts = [
        FRVE_MAGIC,
        struct.pack("<I", FRVE_VERSION),
        struct.pack("<QQ", len(matrix.ids), matrix.dim),
        np.ascontiguousarray(matrix.values, dtype="<f4").tobytes(),
    ]
    for review_id in matrix.ids:
        raw = review_id.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise IdCountMismatch(f"id too long for format: {review_id[:40]!r}...")
        parts.append(struct.pack("<H", len(raw)) + raw)
    tail = matrix.fingerprint.encode("utf-8")
    if len(tail) > 0xFFFF:
        raise IdCountMismatch("fingerprint too long for format")
    parts.append(struct.pack("<H", len(tail)) + tail)
    Path(path).write_bytes(b"".join(parts))


def read_embedding_file(path: str | Path) -> EmbeddingMatrix:
    """Parse an FRVE file, validating magic, version, counts and finiteness."""
    blob = Path(path).read_bytes()
    if len(blob) < 4 or blob[:4] != FRVE_MAGIC:
        raise BadMagic(f"{path}: not an FRVE file")
    if len(blob) < 24:
        raise TruncatedPayload(f"{path}: header incomplete")
    (version,) = struct.unpack_from("<I", blob, 4)
    if version != FRVE_VERSION:
        raise UnsupportedVersion(f"{path}: version {version}, expected {FRVE_VERSION}")
    n, d = struct.unpack_from("<QQ", blob, 8)
    if d < 1:
        raise DimensionMismatch(f"{path}: declared dimension {d}")
    offset = 24
    need = n * d * 4
    if len(blob) - offset < need:
        raise TruncatedPayload(f"{path}: payload needs {need} bytes, {len(blob) - offset} present")
    values = np.frombuffer(blob, dtype="<f4", count=n * d, offset=offset).reshape(n, d)
    if values.size and not np.all(np.isfinite(values)):
        raise NonFiniteValue(f"{path}: payload contains NaN or infinity")
    offset += need
    ids = []
    for k in range(n):
        if len(blob) - offset < 2:
            raise IdCountMismatch(f"{path}: {k} of {n} id records present")
        (length,) = struct.unpack_from("<H", blob, offset)
        offset += 2
        if len(blob) - offset < length:
            raise IdCountMismatch(f"{path}: id record {k} truncated")
        ids.append(blob[offset : offset + length].decode("utf-8"))
        offset += length
    if len(blob) - offset < 2:
        raise TruncatedPayload(f"{path}: fingerprint record missing")
    (length,) = struct.unpack_from("<H", blob, offset)
    offset += 2
    if len(blob) - offset < length:
        raise TruncatedPayload(f"{path}: fingerprint truncated")
    fingerprint = blob[offset : offset + length].decode("utf-8")
    return EmbeddingMatrix(ids=ids, values=values.copy(), fingerprint=fingerprint)


def align(matrix: EmbeddingMatrix, ids: list[str]) -> EmbeddingMatrix:
    """Rows of ``matrix`` reordered/filtered to the requested id order."""
    index = {rid: i for i, rid in enumerate(matrix.ids)}
    rows = []
    for rid in ids:
        if rid not in index:
            raise UnknownReviewId(f"id {rid!r} not in embedding matrix")
        rows.append(index[rid])
    return EmbeddingMatrix(
        ids=list(ids),
        values=matrix.values[rows] if rows else matrix.values[:0],
        fingerprint=matrix.fingerprint,
    )
