"""Tree ensembles: bootstrap forests (with and without per-split feature
subsampling) and adaptive boosting over depth-1 stumps.

Determinism: tree t of an ensemble seeded with s uses the derived seed
splitmix64(s, t) for its bootstrap draw and any feature subsampling, so
results do not depend on training order.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ConfigError
from ..labels import DECEPTIVE, TRUTHFUL
from ..rng import Xoshiro256StarStar, derive_seed
from .base import ClassifierModel, LabeledMatrix, register, require_both_labels
from .tree import GINI, CRITERIA, _Node, grow_tree, _walk


class _ForestBase(ClassifierModel):
    def __init__(self, feature_dim, scaler, roots, tree_seeds, hyper):
        super().__init__(feature_dim, scaler)
        self.roots = list(roots)
        self.tree_seeds = list(tree_seeds)
        self.hyper = dict(hyper)

    def _vote_fractions(self, X):
        votes = np.zeros(X.shape[0])
        for root in self.roots:
            votes += [1.0 if _walk(root, row).label == DECEPTIVE else 0.0 for row in X]
        return votes / len(self.roots)

    def _predict_scaled(self, X):
        return [DECEPTIVE if f >= 0.5 else TRUTHFUL for f in self._vote_fractions(X)]

    def _scores_scaled(self, X):
        return self._vote_fractions(X)

    def params_dict(self):
        return {
            "roots": [r.to_dict() for r in self.roots],
            "tree_seeds": self.tree_seeds,
            "hyper": self.hyper,
        }

    @classmethod
    def from_params(cls, feature_dim, scaler, p):
        return cls(feature_dim, scaler, [_Node.from_dict(r) for r in p["roots"]],
                   p["tree_seeds"], p["hyper"])


@register
class ForestModel(_ForestBase):
    kind = "rforest"


@register
class BaggingModel(_ForestBase):
    kind = "bagging"


def _fit_forest(
    cls,
    data: LabeledMatrix,
    n_trees: int,
    m_features: int | None,
    max_depth: int | None,
    seed: int,
    bootstrap: bool,
    criterion: str,
    min_samples_split: int,
):
    if n_trees < 1:
        raise ConfigError("n_trees must be >= 1")
    if criterion not in CRITERIA:
        raise ConfigError(f"criterion must be one of {CRITERIA}")
    if m_features is not None and not 1 <= m_features <= data.dim:
        raise ConfigError(f"m_features must be in [1, {data.dim}]")
    require_both_labels(data.y)
    X = data.X
    y01 = data.y01().astype(np.int64)
    n = data.n
    roots, seeds = [], []
    for t in range(n_trees):
        tree_seed = derive_seed(seed, t)
        rng = Xoshiro256StarStar(tree_seed)
        idx = np.array(rng.bootstrap_indices(n)) if bootstrap else np.arange(n)
        roots.append(
            grow_tree(X[idx], y01[idx], criterion, max_depth, min_samples_split,
                      m_features=m_features, rng=rng)
        )
        seeds.append(tree_seed)
    return cls(
        feature_dim=data.dim,
        scaler=None,
        roots=roots,
        tree_seeds=seeds,
        hyper={
            "n_trees": n_trees,
            "m_features": m_features,
            "max_depth": max_depth,
            "min_samples_split": min_samples_split,
            "criterion": criterion,
            "bootstrap": bootstrap,
            "seed": seed,
        },
    )


def fit_rforest(
    data: LabeledMatrix,
    n_trees: int = 100,
    m_features: int | None = None,
    max_depth: int | None = None,
    seed: int = 0,
    bootstrap: bool = True,
    criterion: str = GINI,
    min_samples_split: int = 2,
) -> ForestModel:
    """Bootstrap ensemble with ceil(sqrt(d)) random candidate features per
    split by default; majority vote, ties to deceptive."""
    if m_features is None:
        m_features = min(data.dim, math.ceil(math.sqrt(data.dim)))
    return _fit_forest(ForestModel, data, n_trees, m_features, max_depth, seed,
                       bootstrap, criterion, min_samples_split)


def fit_bagging(
    data: LabeledMatrix,
    n_trees: int = 100,
    max_depth: int | None = None,
    seed: int = 0,
    bootstrap: bool = True,
    criterion: str = GINI,
    min_samples_split: int = 2,
) -> BaggingModel:
    """Bootstrap ensemble over full-feature trees (no per-split subsampling)."""
    return _fit_forest(BaggingModel, data, n_trees, None, max_depth, seed,
                       bootstrap, criterion, min_samples_split)


# --- boosting ---------------------------------------------------------------

def best_stump(X: np.ndarray, y_signed: np.ndarray, weights: np.ndarray):
    """Weighted-error-optimal decision stump (feature, threshold, left_sign).

    Predicts ``left_sign`` where x[feature] <= threshold and ``-left_sign``
    elsewhere.  Ties resolve to the lower feature index, lower threshold,
    then left_sign=+1.  Returns (feature, threshold, left_sign, error).
    """
    n, d = X.shape
    order = np.argsort(X, axis=0, kind="stable")
    xs = np.take_along_axis(X, order, axis=0)
    w_pos = np.where(y_signed > 0, weights, 0.0)[order]
    w_neg = np.where(y_signed < 0, weights, 0.0)[order]
    pos_left = np.cumsum(w_pos, axis=0)[:-1]       # weight of +1 rows on the left
    neg_left = np.cumsum(w_neg, axis=0)[:-1]
    total_pos = w_pos.sum(axis=0)
    total_neg = w_neg.sum(axis=0)
    # rule "left -> +1": errors are negatives on the left + positives on the right
    err_plus = neg_left + (total_pos - pos_left)
    err_minus = pos_left + (total_neg - neg_left)
    invalid = xs[1:] <= xs[:-1]
    err_plus[invalid] = np.inf
    err_minus[invalid] = np.inf

    best = (np.inf, d, np.inf, 0)
    for sign, err in ((1, err_plus), (-1, err_minus)):
        flat = np.argmin(err.T)
        col, boundary = divmod(flat, n - 1)
        e = err[boundary, col]
        if not np.isfinite(e):
            continue
        thr = 0.5 * (xs[boundary, col] + xs[boundary + 1, col])
        key = (float(e), int(col), float(thr), 0 if sign == 1 else 1)
        if key < best:
            best = key
            found = (int(col), float(thr), sign, float(e))
    if not np.isfinite(best[0]):
        return None
    return found


@register
class AdaBoostModel(ClassifierModel):
    kind = "adaboost"

    def __init__(self, feature_dim, scaler, stumps, alphas, round_errors, hyper):
        super().__init__(feature_dim, scaler)
        self.stumps = [tuple(s) for s in stumps]  # (feature, threshold, left_sign)
        self.alphas = list(map(float, alphas))
        self.round_errors = list(map(float, round_errors))
        self.hyper = dict(hyper)

    def stump_outputs(self, X: np.ndarray) -> np.ndarray:
        """(n, rounds) matrix of +-1 stump predictions on prepared rows."""
        X = self._prepare(X)
        out = np.empty((X.shape[0], len(self.stumps)))
        for t, (f, thr, sign) in enumerate(self.stumps):
            out[:, t] = np.where(X[:, f] <= thr, sign, -sign)
        return out

    def _margins(self, X: np.ndarray) -> np.ndarray:
        if not self.stumps:
            return np.zeros(X.shape[0])
        scores = np.zeros(X.shape[0])
        for (f, thr, sign), alpha in zip(self.stumps, self.alphas):
            scores += alpha * np.where(X[:, f] <= thr, sign, -sign)
        return scores

    def _predict_scaled(self, X):
        return [DECEPTIVE if m >= 0.0 else TRUTHFUL for m in self._margins(X)]

    def _scores_scaled(self, X):
        return self._margins(X)

    def params_dict(self):
        return {
            "stumps": [list(s) for s in self.stumps],
            "alphas": self.alphas,
            "round_errors": self.round_errors,
            "hyper": self.hyper,
        }

    @classmethod
    def from_params(cls, feature_dim, scaler, p):
        return cls(feature_dim, scaler, p["stumps"], p["alphas"], p["round_errors"],
                   p["hyper"])


def fit_adaboost(data: LabeledMatrix, n_rounds: int = 50, seed: int = 0) -> AdaBoostModel:
    """Two-class boosting over weighted-optimal stumps.

    Per round: eps = weighted stump error, alpha = 0.5*ln((1-eps)/eps) with
    eps clamped to [1e-10, 1-1e-10].  A round with eps >= 0.5 is rejected
    and training halts; eps == 0 keeps the stump and halts.  ``seed`` is
    accepted for interface symmetry; the stump search is deterministic.
    """
    if n_rounds < 1:
        raise ConfigError("n_rounds must be >= 1")
    require_both_labels(data.y)
    X = data.X
    y = data.y_signed()
    n = data.n
    weights = np.full(n, 1.0 / n)
    stumps, alphas, round_errors = [], [], []
    for _ in range(n_rounds):
        found = best_stump(X, y, weights)
        if found is None:
            break
        f, thr, sign, eps = found
        if eps >= 0.5:
            break
        h = np.where(X[:, f] <= thr, sign, -sign)
        eps_cl = min(max(eps, 1e-10), 1.0 - 1e-10)
        alpha = 0.5 * math.log((1.0 - eps_cl) / eps_cl)
        stumps.append((f, thr, sign))
        alphas.append(alpha)
        round_errors.append(eps)
        if eps == 0.0:
            break
        weights = weights * np.exp(-alpha * y * h)
        weights = weights / weights.sum()
    return AdaBoostModel(
        feature_dim=data.dim,
        scaler=None,
        stumps=stumps,
        alphas=alphas,
        round_errors=round_errors,
        hyper={"n_rounds": n_rounds, "seed": seed},
    )
