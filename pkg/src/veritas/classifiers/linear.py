"""Logistic regression by full-batch gradient descent.

Minimizes the mean negative log-likelihood with optional L2 penalty on the
weights (bias unpenalized), labels encoded deceptive=1 / truthful=0.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError, NonFiniteLoss
from ..labels import DECEPTIVE, TRUTHFUL
from .base import ClassifierModel, LabeledMatrix, Scaler, register, require_both_labels


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def nll_loss(w: np.ndarray, b: float, X: np.ndarray, y01: np.ndarray, l2: float) -> float:
    """Mean cross-entropy + (l2/2)*||w||^2, computed stably.

    Overflow to inf/nan is a handled state (divergence detection), not a
    warning condition.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        z = X @ w + b
        ce = np.logaddexp(0.0, z) - y01 * z
        return float(ce.mean() + 0.5 * l2 * (w @ w))


def nll_gradient(w, b, X, y01, l2):
    """(grad_w, grad_b) of nll_loss."""
    with np.errstate(over="ignore", invalid="ignore"):
        r = _sigmoid(X @ w + b) - y01
        return X.T @ r / len(y01) + l2 * w, float(r.mean())


@register
class LogRegModel(ClassifierModel):
    kind = "logreg"

    def __init__(self, feature_dim, scaler, w, b, hyper, losses):
        super().__init__(feature_dim, scaler)
        self.w = np.asarray(w, dtype=np.float64)
        self.b = float(b)
        self.hyper = dict(hyper)
        self.losses = list(map(float, losses))

    def _scores_scaled(self, X):
        return _sigmoid(X @ self.w + self.b)

    def _predict_scaled(self, X):
        return [DECEPTIVE if p >= 0.5 else TRUTHFUL for p in self._scores_scaled(X)]

    def params_dict(self):
        return {"w": self.w.tolist(), "b": self.b, "hyper": self.hyper,
                "losses": self.losses}

    @classmethod
    def from_params(cls, feature_dim, scaler, p):
        return cls(feature_dim, scaler, p["w"], p["b"], p["hyper"], p["losses"])


def fit_logreg(
    data: LabeledMatrix,
    learning_rate: float = 0.1,
    n_iters: int = 500,
    l2: float = 0.0,
) -> LogRegModel:
    """Gradient descent from zero weights on standardized features.

    Raises NonFiniteLoss naming the iteration if the loss diverges.
    """
    if learning_rate <= 0:
        raise ConfigError("learning_rate must be positive")
    if n_iters < 1:
        raise ConfigError("n_iters must be >= 1")
    if l2 < 0:
        raise ConfigError("l2 must be >= 0")
    require_both_labels(data.y)
    scaler = Scaler.fit(data.X)
    X = scaler.transform(data.X)
    y01 = data.y01()
    w = np.zeros(data.dim)
    b = 0.0
    losses = [nll_loss(w, b, X, y01, l2)]
    for it in range(n_iters):
        gw, gb = nll_gradient(w, b, X, y01, l2)
        w = w - learning_rate * gw
        b = b - learning_rate * gb
        loss = nll_loss(w, b, X, y01, l2)
        if not np.isfinite(loss):
            raise NonFiniteLoss(f"loss became non-finite at iteration {it + 1}")
        losses.append(loss)
    return LogRegModel(
        feature_dim=data.dim,
        scaler=scaler,
        w=w,
        b=b,
        hyper={"learning_rate": learning_rate, "n_iters": n_iters, "l2": l2},
        losses=losses,
    )
