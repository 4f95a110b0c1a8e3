"""Binary decision tree with exact greedy splits.

Candidate thresholds are midpoints of consecutive distinct sorted values;
the split maximizing impurity decrease wins, with ties resolved to the
lowest feature index and then the lowest threshold.  The scan is vectorized
over all candidate features at once, which keeps node costs at one argsort
plus a few dense passes.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from ..labels import DECEPTIVE, TRUTHFUL
from .base import ClassifierModel, LabeledMatrix, register, require_both_labels

GINI = "gini"
ENTROPY = "entropy"
CRITERIA = (GINI, ENTROPY)


def gini_impurity(p: np.ndarray) -> np.ndarray:
    """Gini of the deceptive fraction(s) p."""
    return 1.0 - p * p - (1.0 - p) * (1.0 - p)


def entropy_impurity(p: np.ndarray) -> np.ndarray:
    """Shannon entropy in bits of the deceptive fraction(s) p."""
    p = np.asarray(p, dtype=np.float64)
    out = np.zeros_like(p)
    for q in (p, 1.0 - p):
        mask = q > 0.0
        out = out - np.where(mask, q * np.log2(np.where(mask, q, 1.0)), 0.0)
    return out


def _impurity(p: np.ndarray, criterion: str) -> np.ndarray:
    return gini_impurity(p) if criterion == GINI else entropy_impurity(p)


def find_best_split(
    X: np.ndarray,
    y01: np.ndarray,
    feature_indices: np.ndarray,
    criterion: str,
) -> tuple[int, float, float] | None:
    """(feature, threshold, impurity_decrease) of the best split, or None.

    Rows with feature value <= threshold go left.  Returns None when no
    candidate boundary exists or no split improves on the parent.
    """
    n = X.shape[0]
    if n < 2:
        return None
    cols = X[:, feature_indices]
    order = np.argsort(cols, axis=0, kind="stable")
    xs = np.take_along_axis(cols, order, axis=0)
    ys = y01[order]

    pos_prefix = np.cumsum(ys, axis=0)[:-1].astype(np.float64)  # (n-1, m)
    total_pos = float(y01.sum())
    left_n = np.arange(1, n, dtype=np.float64)[:, None]
    right_n = n - left_n
    p_left = pos_prefix / left_n
    p_right = (total_pos - pos_prefix) / right_n
    parent = _impurity(np.array(total_pos / n), criterion)
    weighted = (left_n * _impurity(p_left, criterion) + right_n * _impurity(p_right, criterion)) / n
    gain = parent - weighted
    gain[xs[1:] <= xs[:-1]] = -np.inf  # only boundaries between distinct values

    # first maximum in (feature, boundary) order: scan column-major
    flat = np.argmax(gain.T)
    m = gain.shape[1]
    col, boundary = divmod(flat, n - 1)
    best = gain[boundary, col]
    if not np.isfinite(best) or best <= 0.0:
        return None
    threshold = 0.5 * (xs[boundary, col] + xs[boundary + 1, col])
    return int(feature_indices[col]), float(threshold), float(best)


class _Node:
    __slots__ = ("feature", "threshold", "left", "right", "label", "frac")

    def __init__(self, feature=None, threshold=None, left=None, right=None,
                 label=None, frac=None):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.label = label
        self.frac = frac

    @property
    def is_leaf(self) -> bool:
        return self.label is not None

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"label": self.label, "frac": self.frac}
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "_Node":
        if "label" in d:
            return cls(label=d["label"], frac=d["frac"])
        return cls(
            feature=d["feature"],
            threshold=d["threshold"],
            left=cls.from_dict(d["left"]),
            right=cls.from_dict(d["right"]),
        )


def _leaf(y01: np.ndarray) -> _Node:
    pos = int(y01.sum())
    label = DECEPTIVE if 2 * pos >= len(y01) else TRUTHFUL
    return _Node(label=label, frac=pos / len(y01))


def grow_tree(
    X: np.ndarray,
    y01: np.ndarray,
    criterion: str,
    max_depth: int | None,
    min_samples_split: int,
    m_features: int | None = None,
    rng=None,
    depth: int = 0,
) -> _Node:
    """Recursive greedy growth; single-class and unsplittable nodes become
    leaves (bootstrap resamples may be single-class, which is fine here)."""
    n, d = X.shape
    pos = int(y01.sum())
    if pos == 0 or pos == n:
        return _leaf(y01)
    if max_depth is not None and depth >= max_depth:
        return _leaf(y01)
    if n < min_samples_split:
        return _leaf(y01)
    if m_features is not None and m_features < d:
        candidates = np.array(rng.sample_indices(d, m_features), dtype=np.int64)
    else:
        candidates = np.arange(d, dtype=np.int64)
    split = find_best_split(X, y01, candidates, criterion)
    if split is None:
        return _leaf(y01)
    feature, threshold, _ = split
    mask = X[:, feature] <= threshold
    if not mask.any() or mask.all():  # midpoint degenerated to an endpoint
        return _leaf(y01)
    node = _Node(feature=feature, threshold=threshold)
    node.left = grow_tree(X[mask], y01[mask], criterion, max_depth,
                          min_samples_split, m_features, rng, depth + 1)
    node.right = grow_tree(X[~mask], y01[~mask], criterion, max_depth,
                           min_samples_split, m_features, rng, depth + 1)
    return node


def _walk(node: _Node, row: np.ndarray) -> _Node:
    while not node.is_leaf:
        node = node.left if row[node.feature] <= node.threshold else node.right
    return node


@register
class TreeModel(ClassifierModel):
    kind = "dtree"

    def __init__(self, feature_dim, scaler, root: _Node, hyper: dict):
        super().__init__(feature_dim, scaler)
        self.root = root
        self.hyper = dict(hyper)

    def _predict_scaled(self, X):
        return [_walk(self.root, row).label for row in X]

    def _scores_scaled(self, X):
        return np.array([_walk(self.root, row).frac for row in X])

    def depth(self) -> int:
        def go(node):
            return 0 if node.is_leaf else 1 + max(go(node.left), go(node.right))
        return go(self.root)

    def params_dict(self):
        return {"root": self.root.to_dict(), "hyper": self.hyper}

    @classmethod
    def from_params(cls, feature_dim, scaler, p):
        return cls(feature_dim, scaler, _Node.from_dict(p["root"]), p["hyper"])


def fit_dtree(
    data: LabeledMatrix,
    criterion: str = GINI,
    max_depth: int | None = None,
    min_samples_split: int = 2,
    seed: int = 0,
) -> TreeModel:
    """Greedy binary tree on raw features (trees are scale-invariant).

    ``seed`` only matters when a feature subsample is requested by the
    ensemble wrappers; a plain tree scan is deterministic without it.
    """
    if criterion not in CRITERIA:
        raise ConfigError(f"criterion must be one of {CRITERIA}")
    if max_depth is not None and max_depth < 1:
        raise ConfigError("max_depth must be >= 1")
    if min_samples_split < 2:
        raise ConfigError("min_samples_split must be >= 2")
    require_both_labels(data.y)
    root = grow_tree(data.X, data.y01().astype(np.int64), criterion, max_depth,
                     min_samples_split)
    return TreeModel(
        feature_dim=data.dim,
        scaler=None,
        root=root,
        hyper={
            "criterion": criterion,
            "max_depth": max_depth,
            "min_samples_split": min_samples_split,
            "seed": seed,
        },
    )
