"""Review corpora: directory/CSV loaders and deterministic train/test splits.

Directory layout (the published deceptive-opinion corpora): text files under
subdirectories whose path components carry the label ("deceptive"/"truthful")
and polarity ("positive"/"negative") as case-insensitive substrings, e.g.

    root/positive_polarity/deceptive_from_MTurk/fold1/d_hilton_3.txt

Fold subdirectories are flattened; the canonical review order is lexicographic
by path relative to the root.  A review id is that relative path with
separators replaced by "__".

CSV corpora are RFC-4180 delimited text with a header row; one review per
row, id "<filename>:<row-index>".
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    ConfigError,
    CorpusEmpty,
    DegenerateSplit,
    EmptyReviewText,
    EncodingError,
    MissingColumn,
    MissingLabelPath,
    UnmappedLabel,
)
from .labels import CLASS_ORDER, DECEPTIVE, NEGATIVE, POSITIVE, TRUTHFUL, UNKNOWN
from .rng import Xoshiro256StarStar, derive_seed


@dataclass(frozen=True)
class Review:
    """One labeled review text."""

    id: str
    text: str
    label: str
    polarity: str = UNKNOWN
    source: str = ""

    def __post_init__(self):
        if not self.id:
            raise ValueError("review id must be non-empty")
        if self.label not in CLASS_ORDER:
            raise ValueError(f"unknown label {self.label!r}")
        if not self.text.strip():
            raise EmptyReviewText(f"review {self.id!r} has no text")


@dataclass(frozen=True)
class ReviewSet:
    """An ordered labeled corpus; order is the canonical load order."""

    reviews: tuple[Review, ...]
    name: str = ""

    def __post_init__(self):
        seen = set()
        for r in self.reviews:
            if r.id in seen:
                raise ValueError(f"duplicate review id {r.id!r}")
            seen.add(r.id)

    def __len__(self) -> int:
        return len(self.reviews)

    def __iter__(self):
        return iter(self.reviews)

    @property
    def ids(self) -> list[str]:
        return [r.id for r in self.reviews]

    def by_id(self, review_id: str) -> Review:
        try:
            return self._index[review_id]
        except AttributeError:
            object.__setattr__(self, "_index", {r.id: r for r in self.reviews})
            return self._index[review_id]

    def texts(self, ids: list[str] | None = None) -> list[str]:
        if ids is None:
            return [r.text for r in self.reviews]
        return [self.by_id(i).text for i in ids]

    def labels(self, ids: list[str] | None = None) -> list[str]:
        if ids is None:
            return [r.label for r in self.reviews]
        return [self.by_id(i).label for i in ids]

    def label_counts(self) -> dict[str, int]:
        counts = {DECEPTIVE: 0, TRUTHFUL: 0}
        for r in self.reviews:
            counts[r.label] += 1
        return counts

    def polarity_counts(self) -> dict[tuple[str, str], int]:
        """Counts keyed by (label, polarity); reports both axes of the corpus."""
        counts: dict[tuple[str, str], int] = {}
        for r in self.reviews:
            key = (r.label, r.polarity)
            counts[key] = counts.get(key, 0) + 1
        return counts


@dataclass(frozen=True)
class SplitIndex:
    """A deterministic train/test partition of a ReviewSet, by review id."""

    train_ids: tuple[str, ...]
    test_ids: tuple[str, ...]
    seed: int
    ratio: float
    stratified: bool = True

    def __post_init__(self):
        overlap = set(self.train_ids) & set(self.test_ids)
        if overlap:
            raise ValueError(f"train/test overlap: {sorted(overlap)[:3]}")


def _label_from_path(rel: str) -> str:
    low = rel.lower()
    if "deceptive" in low:
        return DECEPTIVE
    if "truthful" in low:
        return TRUTHFUL
    raise MissingLabelPath(f"path encodes no label: {rel!r}")


def _polarity_from_path(rel: str) -> str:
    low = rel.lower()
    if "positive" in low:
        return POSITIVE
    if "negative" in low:
        return NEGATIVE
    return UNKNOWN


def _source_from_stem(stem: str) -> str:
    # published filenames look like d_hilton_3 / t_hilton_14; the middle
    # token is the hotel
    parts = stem.split("_")
    if len(parts) >= 3 and parts[0] in ("d", "t"):
        return "_".join(parts[1:-1])
    return stem


def load_ott_corpus(root_dir: str | Path) -> ReviewSet:
    """Load every *.txt under ``root_dir`` into a ReviewSet.

    One review per file; label and polarity come from path substrings
    ("deceptive" is checked before "truthful"); canonical order is
    lexicographic by relative path.
    """
    root = Path(root_dir)
    if not root.is_dir():
        raise CorpusEmpty(f"not a directory: {root}")
    rels = sorted(p.relative_to(root).as_posix() for p in root.rglob("*.txt"))
    if not rels:
        raise CorpusEmpty(f"no .txt files under {root}")
    reviews = []
    for rel in rels:
        label = _label_from_path(rel)
        path = root / rel
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(f"{rel}: not valid UTF-8 ({exc})") from exc
        reviews.append(
            Review(
                id=rel.replace("/", "__"),
                text=text.strip(),
                label=label,
                polarity=_polarity_from_path(rel),
                source=_source_from_stem(Path(rel).stem),
            )
        )
    return ReviewSet(reviews=tuple(reviews), name=root.name)


def load_csv_corpus(
    file: str | Path,
    text_col: str,
    label_col: str,
    label_map: dict[str, str],
    delimiter: str = ",",
    polarity_col: str | None = None,
) -> ReviewSet:
    """Load a header-bearing delimited file into a ReviewSet.

    ``label_map`` maps raw label cells to "deceptive"/"truthful"; a cell
    absent from the map raises UnmappedLabel naming the row.  Polarity is
    "unknown" unless ``polarity_col`` is given.
    """
    path = Path(file)
    for target in label_map.values():
        if target not in CLASS_ORDER:
            raise ConfigError(f"label_map target {target!r} is not a known label")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh, delimiter=delimiter)
        header = reader.fieldnames or []
        for col in [text_col, label_col] + ([polarity_col] if polarity_col else []):
            if col not in header:
                raise MissingColumn(f"column {col!r} not in header {header}")
        reviews = []
        for i, row in enumerate(reader):
            raw_label = row[label_col]
            if raw_label not in label_map:
                raise UnmappedLabel(f"row {i}: label {raw_label!r} not in label map")
            polarity = UNKNOWN
            if polarity_col:
                cell = (row[polarity_col] or "").strip().lower()
                if cell in (POSITIVE, NEGATIVE):
                    polarity = cell
            text = row[text_col] or ""
            if not text.strip():
                raise EmptyReviewText(f"row {i}: empty review text")
            reviews.append(
                Review(
                    id=f"{path.name}:{i}",
                    text=text.strip(),
                    label=label_map[raw_label],
                    polarity=polarity,
                    source=path.name,
                )
            )
    if not reviews:
        raise CorpusEmpty(f"no data rows in {path}")
    return ReviewSet(reviews=tuple(reviews), name=path.name)


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def _apportion_test_counts(label_sizes: dict[str, int], ratio: float, n_test: int) -> dict[str, int]:
    # largest-remainder apportionment: per-label floor of the ideal test
    # count, remaining seats by descending fractional remainder (ties by
    # label name), capped at the label's size
    ideal = {lab: (1.0 - ratio) * n for lab, n in label_sizes.items()}
    counts = {lab: min(math.floor(v), label_sizes[lab]) for lab, v in ideal.items()}
    remaining = n_test - sum(counts.values())
    order = sorted(label_sizes, key=lambda lab: (-(ideal[lab] - math.floor(ideal[lab])), lab))
    i = 0
    while remaining > 0 and any(counts[lab] < label_sizes[lab] for lab in order):
        lab = order[i % len(order)]
        if counts[lab] < label_sizes[lab]:
            counts[lab] += 1
            remaining -= 1
        i += 1
    return counts


def stratified_split(
    review_set: ReviewSet,
    ratio: float,
    seed: int,
    stratify: bool = True,
) -> SplitIndex:
    """Partition a ReviewSet into train/test ids.

    Per-label seeded shuffle then proportional cut; the test side gets
    round((1-ratio)*n) reviews in total and each label's test count differs
    from its ideal share by less than one review.  Identical inputs produce
    an identical SplitIndex.  With ``stratify=False`` a single shuffle of
    the whole corpus is cut instead.
    """
    if not 0.0 < ratio < 1.0:
        raise ConfigError(f"split ratio must be in (0,1), got {ratio}")
    n = len(review_set)
    n_test = _round_half_up((1.0 - ratio) * n)
    if n_test <= 0 or n_test >= n:
        raise DegenerateSplit(f"ratio {ratio} leaves an empty side for n={n}")

    if not stratify:
        ids = list(review_set.ids)
        Xoshiro256StarStar(seed).shuffle(ids)
        return SplitIndex(
            train_ids=tuple(ids[:-n_test]),
            test_ids=tuple(ids[-n_test:]),
            seed=seed,
            ratio=ratio,
            stratified=False,
        )

    by_label: dict[str, list[str]] = {}
    for r in review_set:
        by_label.setdefault(r.label, []).append(r.id)
    if len(by_label) < 2:
        raise DegenerateSplit("stratified split needs at least one review of each label")
    label_sizes = {lab: len(ids) for lab, ids in by_label.items()}
    test_counts = _apportion_test_counts(label_sizes, ratio, n_test)

    train: list[str] = []
    test: list[str] = []
    for idx, lab in enumerate(sorted(by_label)):
        ids = list(by_label[lab])
        Xoshiro256StarStar(derive_seed(seed, idx)).shuffle(ids)
        cut = len(ids) - test_counts[lab]
        train.extend(ids[:cut])
        test.extend(ids[cut:])
    return SplitIndex(
        train_ids=tuple(train),
        test_ids=tuple(test),
        seed=seed,
        ratio=ratio,
        stratified=True,
    )
