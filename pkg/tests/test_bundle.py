from __future__ import annotations

import json
import zlib

import numpy as np
import pytest

from veritas.bundle import (
    FeaturePipeline,
    ModelBundle,
    bundle_bytes,
    load_bundle,
    save_bundle,
)
from veritas.classifiers import FITTERS, LabeledMatrix
from veritas.embedding import LexicalConfig, fit_lexical_vectorizer
from veritas.errors import CorruptBundle, UnsupportedBundleVersion


def _blobs(seed=0, n=30, d=3):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, d))
    X[: n // 2] += 1.0
    y = ("deceptive",) * (n // 2) + ("truthful",) * (n - n // 2)
    return LabeledMatrix(X=X, y=y, ids=tuple(f"r{i}" for i in range(n)))


def _pipeline():
    vec = fit_lexical_vectorizer(["good hotel", "bad room"], LexicalConfig())
    return FeaturePipeline(kind="lexical", fingerprint=vec.fingerprint(), vectorizer=vec)


PARAMS = {
    "svm": {},
    "gnb": {},
    "knn": {"k": 3},
    "dtree": {"max_depth": 3},
    "rforest": {"n_trees": 4},
    "bagging": {"n_trees": 3},
    "adaboost": {"n_rounds": 5},
    "logreg": {"n_iters": 50},
}


@pytest.mark.parametrize("kind", sorted(PARAMS))
def test_round_trip_every_kind(kind, tmp_path):
    data = _blobs()
    model = FITTERS[kind](data, **PARAMS[kind])
    bundle = ModelBundle(model=model, features=_pipeline(), metadata={"k": "v"})
    path = tmp_path / f"{kind}.vbundle"
    save_bundle(bundle, path)
    back = load_bundle(path)
    assert back.model.kind == kind
    assert back.metadata == {"k": "v"}
    # loaded predictions equal the in-memory model's, elementwise
    probe = _blobs(seed=1).X
    assert back.model.predict(probe) == model.predict(probe)
    assert np.array_equal(back.model.decision_scores(probe), model.decision_scores(probe))
    # bytes are reproducible
    assert bundle_bytes(back) == bundle_bytes(bundle)


def test_lexical_vectorizer_survives_round_trip(tmp_path):
    data = _blobs()
    bundle = ModelBundle(model=FITTERS["gnb"](data), features=_pipeline())
    save_bundle(bundle, tmp_path / "b.vbundle")
    back = load_bundle(tmp_path / "b.vbundle")
    vec, vec0 = back.features.vectorizer, bundle.features.vectorizer
    assert vec.vocabulary == vec0.vocabulary
    assert np.array_equal(vec.idf, vec0.idf)
    assert vec.config == vec0.config
    assert back.features.fingerprint == bundle.features.fingerprint


def test_truncated_file_is_corrupt(tmp_path):
    data = _blobs()
    path = tmp_path / "b.vbundle"
    save_bundle(ModelBundle(model=FITTERS["svm"](data), features=_pipeline()), path)
    blob = path.read_bytes()
    for cut in (len(blob) - 3, len(blob) // 2, 10):
        path.write_bytes(blob[:cut])
        with pytest.raises(CorruptBundle):
            load_bundle(path)


def test_tampered_body_is_corrupt(tmp_path):
    data = _blobs()
    path = tmp_path / "b.vbundle"
    save_bundle(ModelBundle(model=FITTERS["svm"](data), features=_pipeline()), path)
    blob = bytearray(path.read_bytes())
    blob[50] ^= 0xFF
    path.write_bytes(bytes(blob))
    with pytest.raises(CorruptBundle):
        load_bundle(path)


def test_missing_footer_is_corrupt(tmp_path):
    path = tmp_path / "b.vbundle"
    path.write_bytes(b'{"format_version": 1}\n')
    with pytest.raises(CorruptBundle):
        load_bundle(path)


def test_unsupported_version(tmp_path):
    data = _blobs()
    path = tmp_path / "b.vbundle"
    save_bundle(ModelBundle(model=FITTERS["svm"](data), features=_pipeline()), path)
    doc = json.loads(path.read_bytes().rsplit(b"\n", 2)[0])
    doc["format_version"] = 99
    body = json.dumps(doc, indent=2, sort_keys=True).encode() + b"\n"
    crc = zlib.crc32(body) & 0xFFFFFFFF
    path.write_bytes(body + f"crc32:{crc:08x}\n".encode())
    with pytest.raises(UnsupportedBundleVersion):
        load_bundle(path)


def test_json_body_numbers_round_trip_exactly(tmp_path):
    data = _blobs(seed=3)
    model = FITTERS["svm"](data)
    path = tmp_path / "b.vbundle"
    save_bundle(ModelBundle(model=model, features=_pipeline()), path)
    back = load_bundle(path)
    assert np.array_equal(back.model.w, model.w)
    assert back.model.b == model.b
    assert np.array_equal(back.model.alphas, model.alphas)
    assert np.array_equal(back.model.scaler.mean, model.scaler.mean)
    assert np.array_equal(back.model.scaler.std, model.scaler.std)
