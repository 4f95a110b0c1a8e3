"""Best-model persistence: a single-file, versioned JSON document with a
CRC-32 checksum footer.

The file is the bundle JSON (sorted keys, 2-space indent), a newline, and a
final line ``crc32:XXXXXXXX`` over everything before it.  Numeric arrays are
serialized through repr-exact decimal text, so a loaded model reproduces the
in-memory model's predictions bit for bit.  Bundles carry no timestamps;
identical training inputs produce byte-identical files.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .classifiers import ClassifierModel, model_from_dict
from .embedding import LexicalConfig, LexicalVectorizer
from .errors import CorruptBundle, UnsupportedBundleVersion
from .labels import CLASS_ORDER, DECEPTIVE

BUNDLE_VERSION = 1


@dataclass
class FeaturePipeline:
    """How raw review text (or an external embedding file) becomes a vector."""

    kind: str  # "lexical" | "embedding_file"
    fingerprint: str
    pooling: dict = field(default_factory=lambda: {"kind": "mean", "max_tokens": 256})
    vectorizer: LexicalVectorizer | None = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "fingerprint": self.fingerprint, "pooling": self.pooling}
        if self.vectorizer is not None:
            vocab = sorted(self.vectorizer.vocabulary, key=self.vectorizer.vocabulary.get)
            out["lexical"] = {
                "vocabulary": vocab,
                "idf": self.vectorizer.idf.tolist(),
                "config": {
                    "min_df": self.vectorizer.config.min_df,
                    "max_features": self.vectorizer.config.max_features,
                    "lowercase": self.vectorizer.config.lowercase,
                },
            }
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "FeaturePipeline":
        vectorizer = None
        if "lexical" in d:
            lex = d["lexical"]
            vectorizer = LexicalVectorizer(
                vocabulary={t: i for i, t in enumerate(lex["vocabulary"])},
                idf=np.array(lex["idf"], dtype=np.float64),
                config=LexicalConfig(**lex["config"]),
            )
        return cls(kind=d["kind"], fingerprint=d["fingerprint"],
                   pooling=d.get("pooling", {}), vectorizer=vectorizer)


@dataclass
class ModelBundle:
    """A fitted classifier plus everything needed to reuse it."""

    model: ClassifierModel
    features: FeaturePipeline
    metadata: dict = field(default_factory=dict)
    format_version: int = BUNDLE_VERSION

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "label_encoding": {"classes": list(CLASS_ORDER), "positive_class": DECEPTIVE},
            "features": self.features.to_dict(),
            "model": self.model.to_dict(),
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelBundle":
        version = d.get("format_version")
        if version != BUNDLE_VERSION:
            raise UnsupportedBundleVersion(f"bundle format version {version!r}, expected {BUNDLE_VERSION}")
        return cls(
            model=model_from_dict(d["model"]),
            features=FeaturePipeline.from_dict(d["features"]),
            metadata=d.get("metadata", {}),
            format_version=version,
        )


def bundle_bytes(bundle: ModelBundle) -> bytes:
    body = json.dumps(bundle.to_dict(), indent=2, sort_keys=True).encode("utf-8") + b"\n"
    crc = zlib.crc32(body) & 0xFFFFFFFF
    return body + f"crc32:{crc:08x}\n".encode("ascii")


def save_bundle(bundle: ModelBundle, path: str | Path) -> None:
    Path(path).write_bytes(bundle_bytes(bundle))


def load_bundle(path: str | Path) -> ModelBundle:
    """Parse and checksum-verify a bundle file."""
    blob = Path(path).read_bytes()
    lines = blob.rsplit(b"\n", 2)
    if len(lines) < 3 or not lines[1].startswith(b"crc32:"):
        raise CorruptBundle(f"{path}: checksum footer missing")
    body = lines[0] + b"\n"
    footer = lines[1]
    try:
        expected = int(footer.split(b":", 1)[1], 16)
    except ValueError as exc:
        raise CorruptBundle(f"{path}: malformed checksum footer") from exc
    actual = zlib.crc32(body) & 0xFFFFFFFF
    if actual != expected:
        raise CorruptBundle(f"{path}: checksum mismatch (file {expected:08x}, content {actual:08x})")
    try:
        doc = json.loads(body.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptBundle(f"{path}: invalid JSON body") from exc
    return ModelBundle.from_dict(doc)
