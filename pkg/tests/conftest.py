from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from veritas.classifiers import LabeledMatrix
from veritas.synth import generate_hotel_corpus


@pytest.fixture(scope="session")
def small_ott_root(tmp_path_factory) -> Path:
    """240 synthetic reviews in the standard directory layout."""
    root = tmp_path_factory.mktemp("ott_small")
    generate_hotel_corpus(root, seed=7, hotels=6, per_hotel=40)
    return root


@pytest.fixture(scope="session")
def full_ott_root(tmp_path_factory) -> Path:
    """Full-shape synthetic hotel corpus: 20 hotels x 80 = 1600 reviews."""
    root = tmp_path_factory.mktemp("ott_full")
    generate_hotel_corpus(root, seed=7)
    return root


def random_labeled(rng: np.random.Generator, n: int, d: int, sep: float = 1.0) -> LabeledMatrix:
    """Two gaussian blobs, deceptive shifted +sep on every axis."""
    half = n // 2
    X = rng.normal(size=(n, d))
    X[:half] += sep
    y = ("deceptive",) * half + ("truthful",) * (n - half)
    ids = tuple(f"r{i}" for i in range(n))
    return LabeledMatrix(X=X, y=y, ids=ids)
