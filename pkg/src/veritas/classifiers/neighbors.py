"""k-nearest-neighbor voting on standardized features (Euclidean metric).

Distance ties resolve to the lower training-row index; vote ties resolve to
the single nearest neighbor's label.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError, KTooLarge
from ..labels import DECEPTIVE, TRUTHFUL
from .base import ClassifierModel, LabeledMatrix, Scaler, register, require_both_labels


@register
class KnnModel(ClassifierModel):
    kind = "knn"

    def __init__(self, feature_dim, scaler, train_X, train_y01, k):
        super().__init__(feature_dim, scaler)
        self.train_X = np.asarray(train_X, dtype=np.float64)  # already standardized
        self.train_y01 = np.asarray(train_y01, dtype=np.int64)
        self.k = int(k)

    def _neighbor_votes(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        # squared distances preserve the ordering; stable argsort keeps
        # lower training-row indices ahead on exact ties
        d2 = (
            np.sum(X * X, axis=1)[:, None]
            - 2.0 * X @ self.train_X.T
            + np.sum(self.train_X * self.train_X, axis=1)[None, :]
        )
        order = np.argsort(d2, axis=1, kind="stable")[:, : self.k]
        votes = self.train_y01[order]
        nearest = self.train_y01[order[:, 0]]
        return votes, nearest

    def _predict_scaled(self, X):
        votes, nearest = self._neighbor_votes(X)
        out = []
        for row_votes, near in zip(votes, nearest):
            pos = int(row_votes.sum())
            neg = self.k - pos
            if pos > neg:
                out.append(DECEPTIVE)
            elif neg > pos:
                out.append(TRUTHFUL)
            else:
                out.append(DECEPTIVE if near == 1 else TRUTHFUL)
        return out

    def _scores_scaled(self, X):
        votes, _ = self._neighbor_votes(X)
        return votes.sum(axis=1) / float(self.k)

    def params_dict(self):
        return {
            "train_X": self.train_X.tolist(),
            "train_y01": self.train_y01.tolist(),
            "k": self.k,
        }

    @classmethod
    def from_params(cls, feature_dim, scaler, p):
        return cls(feature_dim, scaler, p["train_X"], p["train_y01"], p["k"])


def fit_knn(data: LabeledMatrix, k: int = 5) -> KnnModel:
    """Store the standardized training matrix; classification happens at
    query time."""
    if k < 1:
        raise ConfigError("k must be >= 1")
    if k > data.n:
        raise KTooLarge(f"k={k} exceeds {data.n} training rows")
    require_both_labels(data.y)
    scaler = Scaler.fit(data.X)
    return KnnModel(
        feature_dim=data.dim,
        scaler=scaler,
        train_X=scaler.transform(data.X),
        train_y01=data.y01().astype(np.int64),
        k=k,
    )


def predict_knn(model: KnnModel, query_rows) -> list[str]:
    """Euclidean k-nearest vote for each query row."""
    return model.predict(query_rows)
