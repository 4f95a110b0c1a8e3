"""FRVE writer, byte-for-byte per the toolkit's published container format:
magic "FRVE", u32 LE version 1, u64 LE n and d, n*d little-endian binary32
row-major payload, n length-prefixed UTF-8 id records (u16 LE lengths), and
a length-prefixed UTF-8 provider fingerprint.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import WriteError

MAGIC = b"FRVE"
VERSION = 1


def write_frve(path: str | Path, ids: list[str], values: np.ndarray, fingerprint: str) -> None:
    values = np.ascontiguousarray(values, dtype="<f4")
    if values.ndim != 2 or values.shape[0] != len(ids):
        raise WriteError(f"{len(ids)} ids for value shape {values.shape}")
    if values.size and not np.all(np.isfinite(values)):
        raise WriteError("refusing to write non-finite embedding values")
    parts = [
        MAGIC,
        struct.pack("<I", VERSION),
        struct.pack("<QQ", values.shape[0], values.shape[1]),
        values.tobytes(),
    ]
    for review_id in ids:
        raw = review_id.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise WriteError(f"id too long for format: {review_id[:40]!r}")
        parts.append(struct.pack("<H", len(raw)) + raw)
    tail = fingerprint.encode("utf-8")
    parts.append(struct.pack("<H", len(tail)) + tail)
    try:
        Path(path).write_bytes(b"".join(parts))
    except OSError as exc:
        raise WriteError(f"cannot write {path}: {exc}") from exc
