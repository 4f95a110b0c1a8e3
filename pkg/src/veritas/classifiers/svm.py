"""Linear soft-margin SVM trained by sequential minimal optimization.

Pairwise coordinate ascent on the dual: each sweep visits every sample and,
for any multiplier violating its KKT condition, optimizes it jointly with a
partner in closed form.  The partner is chosen by the largest error gap
|E_i - E_j| over non-bound multipliers, with seeded random fallbacks when
that step cannot move.  A full error cache and the weight vector are
maintained incrementally (linear kernel), so sweeps cost O(n) lookups and
each successful step costs two mat-vec products.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from ..labels import DECEPTIVE, TRUTHFUL
from ..rng import Xoshiro256StarStar
from .base import ClassifierModel, LabeledMatrix, Scaler, register, require_both_labels


@register
class SvmModel(ClassifierModel):
    kind = "svm"

    def __init__(self, feature_dim, scaler, w, b, alphas, hyper, converged, n_sweeps):
        super().__init__(feature_dim, scaler)
        self.w = np.asarray(w, dtype=np.float64)
        self.b = float(b)
        self.alphas = np.asarray(alphas, dtype=np.float64)
        self.hyper = dict(hyper)
        self.converged = bool(converged)
        self.n_sweeps = int(n_sweeps)

    def _scores_scaled(self, X):
        return X @ self.w + self.b

    def _predict_scaled(self, X):
        return [DECEPTIVE if f >= 0.0 else TRUTHFUL for f in self._scores_scaled(X)]

    def params_dict(self):
        return {
            "w": self.w.tolist(),
            "b": self.b,
            "alphas": self.alphas.tolist(),
            "hyper": self.hyper,
            "converged": self.converged,
            "n_sweeps": self.n_sweeps,
        }

    @classmethod
    def from_params(cls, feature_dim, scaler, p):
        return cls(feature_dim, scaler, p["w"], p["b"], p["alphas"], p["hyper"],
                   p["converged"], p["n_sweeps"])


class _Smo:
    def __init__(self, X, y, C, tol, seed):
        self.X = X
        self.y = y
        self.C = C
        self.tol = tol
        self.rng = Xoshiro256StarStar(seed)
        n, d = X.shape
        self.n = n
        self.alphas = np.zeros(n)
        self.w = np.zeros(d)
        self.b = 0.0
        self.E = -y.copy()  # f(x) - y with w=0, b=0
        self.diag = np.einsum("ij,ij->i", X, X)
        self.snap = 1e-10 * C

    def refresh_errors(self) -> None:
        self.E = self.X @ self.w + self.b - self.y

    def violates(self, i) -> bool:
        r = self.y[i] * self.E[i]
        return (r < -self.tol and self.alphas[i] < self.C) or (
            r > self.tol and self.alphas[i] > 0.0
        )

    def step(self, i, j) -> bool:
        """Closed-form joint optimization of (alpha_i, alpha_j)."""
        if i == j:
            return False
        X, y, C, alphas = self.X, self.y, self.C, self.alphas
        e_i, e_j = self.E[i], self.E[j]
        k_ij = float(X[i] @ X[j])
        eta = 2.0 * k_ij - self.diag[i] - self.diag[j]
        if eta >= 0.0:
            return False
        if y[i] != y[j]:
            lo = max(0.0, alphas[j] - alphas[i])
            hi = min(C, C + alphas[j] - alphas[i])
        else:
            lo = max(0.0, alphas[i] + alphas[j] - C)
            hi = min(C, alphas[i] + alphas[j])
        if lo >= hi:
            return False
        a_j = alphas[j] - y[j] * (e_i - e_j) / eta
        a_j = min(hi, max(lo, a_j))
        if abs(a_j - alphas[j]) < 1e-12:
            return False
        a_i = alphas[i] + y[i] * y[j] * (alphas[j] - a_j)
        # snap bound dust so satisfied points stop re-triggering KKT checks
        if a_i < self.snap:
            a_i = 0.0
        elif a_i > C - self.snap:
            a_i = C
        if a_j < self.snap:
            a_j = 0.0
        elif a_j > C - self.snap:
            a_j = C
        d_i = a_i - alphas[i]
        d_j = a_j - alphas[j]
        b1 = self.b - e_i - y[i] * d_i * self.diag[i] - y[j] * d_j * k_ij
        b2 = self.b - e_j - y[i] * d_i * k_ij - y[j] * d_j * self.diag[j]
        if 0.0 < a_i < C:
            new_b = b1
        elif 0.0 < a_j < C:
            new_b = b2
        else:
            new_b = 0.5 * (b1 + b2)
        self.E += (
            y[i] * d_i * (X @ X[i])
            + y[j] * d_j * (X @ X[j])
            + (new_b - self.b)
        )
        self.w += y[i] * d_i * X[i] + y[j] * d_j * X[j]
        self.b = new_b
        alphas[i], alphas[j] = a_i, a_j
        return True

    def pick_partners(self, i) -> list[int]:
        """Platt's second choice first, then two random fallbacks."""
        partners = []
        nonbound = np.nonzero((self.alphas > 0.0) & (self.alphas < self.C))[0]
        if len(nonbound):
            gaps = np.abs(self.E[i] - self.E[nonbound])
            best = int(nonbound[int(np.argmax(gaps))])
            if best != i:
                partners.append(best)
        for _ in range(2):
            j = self.rng.below(self.n - 1)
            if j >= i:
                j += 1
            if j not in partners:
                partners.append(j)
        return partners


def fit_svm(
    data: LabeledMatrix,
    C: float = 1.0,
    tol: float = 1e-3,
    max_passes: int = 100,
    seed: int = 0,
) -> SvmModel:
    """Train on standardized features; deceptive is the +1 class.

    Stops once a full sweep finds no KKT violation above ``tol`` and a
    freshly recomputed error cache confirms it, or after ``max_passes``
    sweeps (reported via ``model.converged``).
    """
    if C <= 0:
        raise ConfigError("C must be positive")
    if max_passes < 1:
        raise ConfigError("max_passes must be >= 1")
    require_both_labels(data.y)
    scaler = Scaler.fit(data.X)
    smo = _Smo(scaler.transform(data.X), data.y_signed(), C, tol, seed)

    converged = False
    sweeps = 0
    while sweeps < max_passes:
        sweeps += 1
        violated = False
        for i in range(smo.n):
            if not smo.violates(i):
                continue
            violated = True
            for j in smo.pick_partners(i):
                if smo.step(i, j):
                    break
        if not violated:
            # guard against drift in the incremental error cache
            smo.refresh_errors()
            if not any(smo.violates(i) for i in range(smo.n)):
                converged = True
                break
    return SvmModel(
        feature_dim=data.dim,
        scaler=scaler,
        w=smo.w,
        b=smo.b,
        alphas=smo.alphas,
        hyper={"C": C, "tol": tol, "max_passes": max_passes, "seed": seed},
        converged=converged,
        n_sweeps=sweeps,
    )
