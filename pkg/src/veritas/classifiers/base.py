"""Shared classifier plumbing: labeled matrices, feature standardization,
the fitted-model interface, and the kind registry used by model bundles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateLabels, DimensionMismatch, NonFiniteFeature
from ..labels import CLASS_ORDER, DECEPTIVE, TRUTHFUL


@dataclass(frozen=True)
class LabeledMatrix:
    """Feature rows with labels and review ids, ready for training."""

    X: np.ndarray
    y: tuple[str, ...]
    ids: tuple[str, ...]

    def __post_init__(self):
        X = np.asarray(self.X, dtype=np.float64)
        object.__setattr__(self, "X", X)
        if X.ndim != 2 or X.shape[0] < 2:
            raise ValueError(f"need a 2-D matrix with >= 2 rows, got shape {X.shape}")
        if len(self.y) != X.shape[0] or len(self.ids) != X.shape[0]:
            raise ValueError("labels/ids must match the row count")
        if any(lab not in CLASS_ORDER for lab in self.y):
            raise ValueError("labels must be 'deceptive' or 'truthful'")
        if not np.all(np.isfinite(X)):
            raise NonFiniteFeature("feature matrix contains NaN or infinity")

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def dim(self) -> int:
        return self.X.shape[1]

    def y_signed(self) -> np.ndarray:
        """deceptive -> +1, truthful -> -1."""
        return np.array([1.0 if lab == DECEPTIVE else -1.0 for lab in self.y])

    def y01(self) -> np.ndarray:
        """deceptive -> 1, truthful -> 0."""
        return np.array([1.0 if lab == DECEPTIVE else 0.0 for lab in self.y])


def require_both_labels(y) -> None:
    present = set(y)
    if len(present) < 2:
        raise DegenerateLabels(f"training data has a single class: {present}")


class Scaler:
    """Per-feature (mean, stddev) standardization; zero stddevs clamp to 1."""

    def __init__(self, mean: np.ndarray, std: np.ndarray):
        self.mean = np.asarray(mean, dtype=np.float64)
        self.std = np.asarray(std, dtype=np.float64)
        if np.any(self.std <= 0):
            raise ValueError("scaler stddevs must be positive")

    @classmethod
    def fit(cls, X: np.ndarray) -> "Scaler":
        X = np.asarray(X, dtype=np.float64)
        mean = X.mean(axis=0)
        std = X.std(axis=0)
        std = np.where(std == 0.0, 1.0, std)
        return cls(mean, std)

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=np.float64) - self.mean) / self.std

    def to_dict(self) -> dict:
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "Scaler":
        return cls(np.array(d["mean"]), np.array(d["std"]))


class ClassifierModel:
    """Base for fitted models: validates queries, scales, dispatches."""

    kind = "?"

    def __init__(self, feature_dim: int, scaler: Scaler | None):
        if feature_dim <= 0:
            raise ValueError("feature_dim must be positive")
        self.feature_dim = int(feature_dim)
        self.scaler = scaler

    def _prepare(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        if X.ndim != 2 or X.shape[1] != self.feature_dim:
            raise DimensionMismatch(
                f"{self.kind}: expected {self.feature_dim} columns, got shape {X.shape}"
            )
        if not np.all(np.isfinite(X)):
            raise NonFiniteFeature("query matrix contains NaN or infinity")
        return self.scaler.transform(X) if self.scaler else X

    def predict(self, X) -> list[str]:
        return self._predict_scaled(self._prepare(X))

    def decision_scores(self, X) -> np.ndarray:
        """Kind-native score for the deceptive class (margin, posterior, or
        vote fraction)."""
        return self._scores_scaled(self._prepare(X))

    def _predict_scaled(self, X: np.ndarray) -> list[str]:
        raise NotImplementedError

    def _scores_scaled(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    # bundle serialization
    def params_dict(self) -> dict:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "feature_dim": self.feature_dim,
            "scaler": self.scaler.to_dict() if self.scaler else None,
            "params": self.params_dict(),
        }


_REGISTRY: dict[str, type] = {}


def register(cls):
    _REGISTRY[cls.kind] = cls
    return cls


def model_from_dict(d: dict) -> ClassifierModel:
    kind = d["kind"]
    if kind not in _REGISTRY:
        raise ValueError(f"unknown classifier kind {kind!r}")
    scaler = Scaler.from_dict(d["scaler"]) if d.get("scaler") else None
    return _REGISTRY[kind].from_params(d["feature_dim"], scaler, d["params"])


def predict(model: ClassifierModel, X) -> list[str]:
    """Labels for the rows of X under a fitted model."""
    return model.predict(X)


def majority_label(y01: np.ndarray) -> str:
    """Majority class of 0/1-encoded labels; ties go to deceptive."""
    return DECEPTIVE if 2 * int(y01.sum()) >= len(y01) else TRUTHFUL
