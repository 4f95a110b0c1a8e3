"""Corpus walking per the toolkit's documented external interfaces.

The emitted (id, text) pairs must match the main loader exactly: directory
corpora order lexicographically by relative path with ids formed by replacing
separators with "__"; CSV corpora use "<filename>:<row-index>" ids.  Label
substring validation mirrors the loader so malformed trees fail here instead
of producing ids the toolkit will never look up.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .errors import CorpusError


def read_ott_corpus(root_dir: str | Path) -> list[tuple[str, str]]:
    root = Path(root_dir)
    if not root.is_dir():
        raise CorpusError(f"not a directory: {root}")
    rels = sorted(p.relative_to(root).as_posix() for p in root.rglob("*.txt"))
    if not rels:
        raise CorpusError(f"no .txt files under {root}")
    out = []
    for rel in rels:
        low = rel.lower()
        if "deceptive" not in low and "truthful" not in low:
            raise CorpusError(f"path encodes no label: {rel!r}")
        text = (root / rel).read_text(encoding="utf-8").strip()
        if not text:
            raise CorpusError(f"empty review: {rel!r}")
        out.append((rel.replace("/", "__"), text))
    return out


def read_csv_corpus(file: str | Path, text_col: str = "text",
                    delimiter: str = ",") -> list[tuple[str, str]]:
    path = Path(file)
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh, delimiter=delimiter)
        if text_col not in (reader.fieldnames or []):
            raise CorpusError(f"column {text_col!r} not in header {reader.fieldnames}")
        for i, row in enumerate(reader):
            text = (row[text_col] or "").strip()
            if not text:
                raise CorpusError(f"row {i}: empty review text")
            out.append((f"{path.name}:{i}", text))
    if not out:
        raise CorpusError(f"no data rows in {path}")
    return out
