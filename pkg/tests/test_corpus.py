from __future__ import annotations

import math
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veritas.corpus import (
    Review,
    ReviewSet,
    load_csv_corpus,
    load_ott_corpus,
    stratified_split,
)
from veritas.errors import (
    ConfigError,
    CorpusEmpty,
    DegenerateSplit,
    EmptyReviewText,
    EncodingError,
    MissingColumn,
    MissingLabelPath,
    UnmappedLabel,
)


def _write(root: Path, rel: str, text: str = "fine stay overall") -> None:
    p = root / rel
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text, encoding="utf-8")


# --- directory loader --------------------------------------------------------

def test_ott_full_shape(full_ott_root):
    rs = load_ott_corpus(full_ott_root)
    assert len(rs) == 1600
    assert rs.label_counts() == {"deceptive": 800, "truthful": 800}
    per = rs.polarity_counts()
    assert per[("deceptive", "positive")] == 400
    assert per[("deceptive", "negative")] == 400
    assert per[("truthful", "positive")] == 400
    assert per[("truthful", "negative")] == 400


def test_ott_restaurant_shape(tmp_path):
    # single-polarity corpus: 200 deceptive / 200 truthful, all positive
    for i in range(200):
        _write(tmp_path, f"positive/deceptive_mturk/d_rest_{i:03d}.txt")
        _write(tmp_path, f"positive/truthful_web/t_rest_{i:03d}.txt")
    rs = load_ott_corpus(tmp_path)
    assert rs.label_counts() == {"deceptive": 200, "truthful": 200}
    assert all(r.polarity == "positive" for r in rs)


def test_ott_ids_labels_sources(tmp_path):
    _write(tmp_path, "positive_polarity/deceptive_from_MTurk/fold1/d_hilton_1.txt", "Lovely!")
    _write(tmp_path, "positive_polarity/truthful_from_Web/fold2/t_omni_3.txt", "Parking was $40.")
    rs = load_ott_corpus(tmp_path)
    ids = rs.ids
    assert ids == [
        "positive_polarity__deceptive_from_MTurk__fold1__d_hilton_1.txt",
        "positive_polarity__truthful_from_Web__fold2__t_omni_3.txt",
    ]
    assert rs.reviews[0].label == "deceptive"
    assert rs.reviews[0].source == "hilton"
    assert rs.reviews[1].label == "truthful"
    assert rs.reviews[1].source == "omni"


def test_ott_canonical_order_is_stable(small_ott_root):
    a = load_ott_corpus(small_ott_root)
    b = load_ott_corpus(small_ott_root)
    assert a == b
    assert a.ids == sorted(a.ids)


def test_ott_label_checked_before_truthful(tmp_path):
    # both substrings present: "deceptive" wins
    _write(tmp_path, "deceptive_over_truthful/positive/x_1.txt")
    rs = load_ott_corpus(tmp_path)
    assert rs.reviews[0].label == "deceptive"


def test_ott_empty_dir(tmp_path):
    with pytest.raises(CorpusEmpty):
        load_ott_corpus(tmp_path)


def test_ott_missing_label_path(tmp_path):
    _write(tmp_path, "positive/unlabeled/review_1.txt")
    with pytest.raises(MissingLabelPath):
        load_ott_corpus(tmp_path)


def test_ott_encoding_error(tmp_path):
    p = tmp_path / "positive/deceptive/bad_1.txt"
    p.parent.mkdir(parents=True)
    p.write_bytes(b"caf\xe9 latin-1")
    with pytest.raises(EncodingError):
        load_ott_corpus(tmp_path)


def test_ott_empty_review_text(tmp_path):
    _write(tmp_path, "positive/deceptive/d_x_1.txt", "   \n ")
    with pytest.raises(EmptyReviewText):
        load_ott_corpus(tmp_path)


def test_review_invariants():
    with pytest.raises(ValueError):
        Review(id="", text="hi", label="deceptive")
    with pytest.raises(ValueError):
        Review(id="a", text="hi", label="spam")
    with pytest.raises(ValueError):
        ReviewSet(
            reviews=(
                Review(id="a", text="x", label="deceptive"),
                Review(id="a", text="y", label="truthful"),
            )
        )


# --- CSV loader --------------------------------------------------------------

def _csv(tmp_path: Path, body: str, name: str = "data.csv") -> Path:
    p = tmp_path / name
    p.write_text(body, encoding="utf-8")
    return p


LABEL_MAP = {"fake": "deceptive", "real": "truthful"}


def test_csv_basic(tmp_path):
    p = _csv(
        tmp_path,
        "text,label\n"
        "Loved it,fake\n"
        '"Great, really",real\n'
        "Meh,fake\n"
        "Fine,real\n",
    )
    rs = load_csv_corpus(p, "text", "label", LABEL_MAP)
    assert len(rs) == 4
    assert rs.ids == [f"data.csv:{i}" for i in range(4)]
    assert rs.reviews[1].text == "Great, really"  # RFC-4180 quoting
    assert rs.label_counts() == {"deceptive": 2, "truthful": 2}
    assert all(r.polarity == "unknown" for r in rs)


def test_csv_polarity_column(tmp_path):
    p = _csv(tmp_path, "text,label,mood\nA stay,fake,Positive\nB stay,real,negative\n")
    rs = load_csv_corpus(p, "text", "label", LABEL_MAP, polarity_col="mood")
    assert [r.polarity for r in rs] == ["positive", "negative"]


def test_csv_custom_delimiter(tmp_path):
    p = _csv(tmp_path, "text;label\nGood;fake\nBad;real\n")
    rs = load_csv_corpus(p, "text", "label", LABEL_MAP, delimiter=";")
    assert len(rs) == 2


def test_csv_missing_column(tmp_path):
    p = _csv(tmp_path, "content,label\nx,fake\n")
    with pytest.raises(MissingColumn):
        load_csv_corpus(p, "text", "label", LABEL_MAP)


def test_csv_unmapped_label_names_row(tmp_path):
    p = _csv(tmp_path, "text,label\nx,fake\ny,maybe\n")
    with pytest.raises(UnmappedLabel, match="row 1"):
        load_csv_corpus(p, "text", "label", LABEL_MAP)


def test_csv_empty(tmp_path):
    p = _csv(tmp_path, "text,label\n")
    with pytest.raises(CorpusEmpty):
        load_csv_corpus(p, "text", "label", LABEL_MAP)


def test_csv_large_balanced(tmp_path):
    rows = ["text,label"]
    for i in range(21000):
        rows.append(f"review number {i},{'fake' if i % 2 == 0 else 'real'}")
    p = _csv(tmp_path, "\n".join(rows) + "\n")
    rs = load_csv_corpus(p, "text", "label", LABEL_MAP)
    assert len(rs) == 21000
    assert rs.label_counts() == {"deceptive": 10500, "truthful": 10500}


# --- splits -------------------------------------------------------------------

def _toy_set(n_dec: int, n_tru: int) -> ReviewSet:
    reviews = [
        Review(id=f"d{i}", text=f"fake review {i}", label="deceptive")
        for i in range(n_dec)
    ] + [
        Review(id=f"t{i}", text=f"real review {i}", label="truthful")
        for i in range(n_tru)
    ]
    return ReviewSet(reviews=tuple(reviews), name="toy")


def test_split_sizes_1600():
    rs = _toy_set(800, 800)
    sp = stratified_split(rs, 0.8, seed=42)
    assert len(sp.train_ids) == 1280
    assert len(sp.test_ids) == 320


def test_split_small_exactly_one_per_label():
    rs = _toy_set(5, 5)
    sp = stratified_split(rs, 0.8, seed=1)
    test_dec = sum(1 for i in sp.test_ids if i.startswith("d"))
    test_tru = sum(1 for i in sp.test_ids if i.startswith("t"))
    assert (test_dec, test_tru) == (1, 1)


def test_split_deterministic():
    rs = _toy_set(20, 30)
    a = stratified_split(rs, 0.8, seed=7)
    b = stratified_split(rs, 0.8, seed=7)
    c = stratified_split(rs, 0.8, seed=8)
    assert a.train_ids == b.train_ids and a.test_ids == b.test_ids
    assert a.train_ids != c.train_ids


def test_split_is_partition(small_ott_root):
    from veritas.corpus import load_ott_corpus

    rs = load_ott_corpus(small_ott_root)
    for seed in (0, 1, 99):
        sp = stratified_split(rs, 0.75, seed=seed)
        assert sorted(sp.train_ids + sp.test_ids) == sorted(rs.ids)


def test_split_degenerate():
    rs = _toy_set(2, 2)
    with pytest.raises(DegenerateSplit):
        stratified_split(rs, 0.999, seed=0)  # test side would be empty
    only_dec = ReviewSet(
        reviews=tuple(
            Review(id=f"d{i}", text="x", label="deceptive") for i in range(4)
        )
    )
    with pytest.raises(DegenerateSplit):
        stratified_split(only_dec, 0.5, seed=0)


def test_split_bad_ratio():
    rs = _toy_set(4, 4)
    for ratio in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ConfigError):
            stratified_split(rs, ratio, seed=0)


def test_split_no_stratify_partition():
    rs = _toy_set(11, 7)
    sp = stratified_split(rs, 0.8, seed=3, stratify=False)
    assert sorted(sp.train_ids + sp.test_ids) == sorted(rs.ids)
    assert len(sp.test_ids) == round(0.2 * 18)


@settings(max_examples=60, deadline=None)
@given(
    n_dec=st.integers(min_value=1, max_value=60),
    n_tru=st.integers(min_value=1, max_value=60),
    ratio=st.floats(min_value=0.05, max_value=0.95),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_split_properties(n_dec, n_tru, ratio, seed):
    rs = _toy_set(n_dec, n_tru)
    n = n_dec + n_tru
    n_test = math.floor((1.0 - ratio) * n + 0.5)
    if n_test <= 0 or n_test >= n:
        with pytest.raises(DegenerateSplit):
            stratified_split(rs, ratio, seed=seed)
        return
    sp = stratified_split(rs, ratio, seed=seed)
    # partition
    assert sorted(sp.train_ids + sp.test_ids) == sorted(rs.ids)
    # exact test size
    assert len(sp.test_ids) == n_test
    # per-label deviation < 1 review
    for prefix, count in (("d", n_dec), ("t", n_tru)):
        got = sum(1 for i in sp.test_ids if i.startswith(prefix))
        assert abs(got - (1.0 - ratio) * count) < 1.0 + 1e-9
