"""Gaussian Naive Bayes.

Per class: empirical prior, per-feature mean and variance; prediction takes
the argmax of log prior plus summed Gaussian log-densities.  Variances are
clamped from below to avoid singularities on constant features.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from ..labels import CLASS_ORDER, DECEPTIVE, TRUTHFUL
from .base import ClassifierModel, LabeledMatrix, register, require_both_labels

_LOG_2PI = float(np.log(2.0 * np.pi))


@register
class GnbModel(ClassifierModel):
    kind = "gnb"

    def __init__(self, feature_dim, scaler, log_priors, means, variances, var_smoothing):
        super().__init__(feature_dim, scaler)
        self.log_priors = np.asarray(log_priors, dtype=np.float64)  # class order (deceptive, truthful)
        self.means = np.asarray(means, dtype=np.float64)            # (2, d)
        self.variances = np.asarray(variances, dtype=np.float64)    # (2, d)
        self.var_smoothing = float(var_smoothing)

    def _log_joint(self, X: np.ndarray) -> np.ndarray:
        out = np.empty((X.shape[0], 2))
        for c in range(2):
            diff = X - self.means[c]
            out[:, c] = self.log_priors[c] - 0.5 * np.sum(
                _LOG_2PI + np.log(self.variances[c]) + diff * diff / self.variances[c],
                axis=1,
            )
        return out

    def log_joint(self, X) -> np.ndarray:
        """(n, 2) array of log prior + log likelihood, class order fixed."""
        return self._log_joint(self._prepare(X))

    def posteriors(self, X) -> np.ndarray:
        """(n, 2) normalized class posteriors."""
        lj = self.log_joint(X)
        lj = lj - lj.max(axis=1, keepdims=True)
        p = np.exp(lj)
        return p / p.sum(axis=1, keepdims=True)

    def _predict_scaled(self, X):
        lj = self._log_joint(X)
        # >= keeps exact ties on the deceptive side
        return [DECEPTIVE if row[0] >= row[1] else TRUTHFUL for row in lj]

    def _scores_scaled(self, X):
        lj = self._log_joint(X)
        lj = lj - lj.max(axis=1, keepdims=True)
        p = np.exp(lj)
        return p[:, 0] / p.sum(axis=1)

    def params_dict(self):
        return {
            "log_priors": self.log_priors.tolist(),
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
            "var_smoothing": self.var_smoothing,
        }

    @classmethod
    def from_params(cls, feature_dim, scaler, p):
        return cls(feature_dim, scaler, p["log_priors"], p["means"], p["variances"],
                   p["var_smoothing"])


def fit_gnb(data: LabeledMatrix, var_smoothing: float = 1e-9) -> GnbModel:
    """Fit per-class Gaussians on raw (unscaled) features.

    Each variance is clamped to at least ``var_smoothing`` times the largest
    pooled feature variance (or ``var_smoothing`` itself when every feature
    is constant).
    """
    if var_smoothing <= 0:
        raise ConfigError("var_smoothing must be positive")
    require_both_labels(data.y)
    X = data.X
    y = np.array(data.y)
    max_var = float(X.var(axis=0).max())
    eps = var_smoothing * max_var if max_var > 0 else var_smoothing
    log_priors, means, variances = [], [], []
    for label in CLASS_ORDER:
        rows = X[y == label]
        log_priors.append(np.log(rows.shape[0] / data.n))
        means.append(rows.mean(axis=0))
        variances.append(np.maximum(rows.var(axis=0), eps))
    return GnbModel(
        feature_dim=data.dim,
        scaler=None,
        log_priors=log_priors,
        means=means,
        variances=variances,
        var_smoothing=var_smoothing,
    )
