"""Confusion matrices, per-class/aggregate metrics, report rendering, and
comparison against the shipped reference tables.

Conventions: rows/columns are ordered (deceptive, truthful); every 0/0
metric ratio is defined as 0; printed cells use half-up rounding to two
decimals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import EmptyInput, LengthMismatch, UnknownClassifier
from .labels import CLASS_ORDER

_BASELINE_NAMES = {
    "svm": "SVM",
    "rforest": "Random Forest",
    "bagging": "Bagging",
    "knn": "K-NN",
    "adaboost": "AdaBoost",
    "gnb": "Gaussian Naïve Bayes",
}


@dataclass(frozen=True)
class ConfusionMatrix:
    """2x2 counts; rows = true class, columns = predicted, deceptive first."""

    counts: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        flat = [c for row in self.counts for c in row]
        if any(c < 0 for c in flat):
            raise ValueError("confusion counts must be non-negative")
        if sum(flat) < 1:
            raise EmptyInput("confusion matrix must count at least one review")

    @property
    def total(self) -> int:
        return sum(c for row in self.counts for c in row)

    def as_array(self) -> np.ndarray:
        return np.array(self.counts, dtype=np.int64)

    def support(self, class_index: int) -> int:
        return sum(self.counts[class_index])


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class Averages:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class MetricsReport:
    per_class: dict[str, ClassMetrics]
    accuracy: float
    macro_avg: Averages
    weighted_avg: Averages
    total: int
    classifier_kind: str = ""

    def to_dict(self) -> dict:
        return {
            "classifier_kind": self.classifier_kind,
            "accuracy": self.accuracy,
            "per_class": {
                lab: {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "support": m.support,
                }
                for lab, m in self.per_class.items()
            },
            "macro_avg": vars(self.macro_avg).copy(),
            "weighted_avg": vars(self.weighted_avg).copy(),
            "total": self.total,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MetricsReport":
        return cls(
            per_class={lab: ClassMetrics(**m) for lab, m in d["per_class"].items()},
            accuracy=d["accuracy"],
            macro_avg=Averages(**d["macro_avg"]),
            weighted_avg=Averages(**d["weighted_avg"]),
            total=d["total"],
            classifier_kind=d.get("classifier_kind", ""),
        )


def confusion_matrix(y_true: list[str], y_pred: list[str]) -> ConfusionMatrix:
    """Count (true class, predicted class) pairs."""
    if len(y_true) != len(y_pred):
        raise LengthMismatch(f"{len(y_true)} true labels vs {len(y_pred)} predictions")
    if not y_true:
        raise EmptyInput("no predictions to evaluate")
    index = {lab: i for i, lab in enumerate(CLASS_ORDER)}
    counts = [[0, 0], [0, 0]]
    for t, p in zip(y_true, y_pred):
        counts[index[t]][index[p]] += 1
    return ConfusionMatrix(counts=(tuple(counts[0]), tuple(counts[1])))


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def compute_metrics(cm: ConfusionMatrix, classifier_kind: str = "") -> MetricsReport:
    """Per-class precision/recall/f1 plus accuracy, macro and weighted means."""
    a = cm.as_array()
    per_class: dict[str, ClassMetrics] = {}
    for i, lab in enumerate(CLASS_ORDER):
        tp = float(a[i, i])
        precision = _ratio(tp, float(a[:, i].sum()))
        recall = _ratio(tp, float(a[i, :].sum()))
        f1 = _ratio(2.0 * precision * recall, precision + recall)
        per_class[lab] = ClassMetrics(precision, recall, f1, int(a[i, :].sum()))
    total = cm.total
    supports = np.array([per_class[lab].support for lab in CLASS_ORDER], dtype=np.float64)
    cols = {
        name: np.array([getattr(per_class[lab], name) for lab in CLASS_ORDER])
        for name in ("precision", "recall", "f1")
    }
    macro = Averages(**{k: float(v.mean()) for k, v in cols.items()})
    weighted = Averages(**{k: float((v * supports).sum() / total) for k, v in cols.items()})
    return MetricsReport(
        per_class=per_class,
        accuracy=float(np.trace(a)) / total,
        macro_avg=macro,
        weighted_avg=weighted,
        total=total,
        classifier_kind=classifier_kind,
    )


def round_half_up(x: float, digits: int = 2) -> float:
    q = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


def _cell(x: float) -> str:
    return f"{round_half_up(x):.2f}"


def render_report(report: MetricsReport, format: str = "text") -> str:
    """Render the metrics table.

    Text output mirrors the familiar five-row layout headed by
    "Accuracy =xx.xxxxxx%"; json output keeps full precision.
    """
    if format == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True)
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    width = 12
    lines = [f"Accuracy ={report.accuracy * 100.0:.6f}%", ""]
    lines.append(f"{'':>{width}} {'precision':>9} {'recall':>9} {'f1-score':>9} {'support':>9}")
    lines.append("")
    for lab in CLASS_ORDER:
        m = report.per_class[lab]
        lines.append(
            f"{lab:>{width}} {_cell(m.precision):>9} {_cell(m.recall):>9}"
            f" {_cell(m.f1):>9} {m.support:>9}"
        )
    lines.append("")
    lines.append(f"{'accuracy':>{width}} {'':>9} {'':>9} {_cell(report.accuracy):>9} {report.total:>9}")
    for name, avg in (("macro avg", report.macro_avg), ("weighted avg", report.weighted_avg)):
        lines.append(
            f"{name:>{width}} {_cell(avg.precision):>9} {_cell(avg.recall):>9}"
            f" {_cell(avg.f1):>9} {report.total:>9}"
        )
    return "\n".join(lines) + "\n"


# --- reference tables -------------------------------------------------------

@dataclass(frozen=True)
class BaselineRow:
    classifier: str
    prior_accuracy: float
    this_accuracy: float
    prior_f1: float
    this_f1: float


@dataclass(frozen=True)
class BaselineTable:
    rows: tuple[BaselineRow, ...]

    def row_for_kind(self, kind: str) -> BaselineRow:
        name = _BASELINE_NAMES.get(kind)
        for row in self.rows:
            if row.classifier == name or row.classifier == kind:
                return row
        raise UnknownClassifier(f"no reference row for classifier kind {kind!r}")


def _load_data_json(name: str):
    return json.loads(resources.files("veritas.data").joinpath(name).read_text("utf-8"))


def load_baseline_table(path: str | Path | None = None) -> BaselineTable:
    """The shipped accuracy/f1 comparison table (or one from ``path``)."""
    raw = json.loads(Path(path).read_text("utf-8")) if path else _load_data_json("table2.json")
    return BaselineTable(rows=tuple(BaselineRow(**row) for row in raw))


def load_reference_figures() -> dict:
    """Printed per-classifier metric tables used as stored baselines."""
    return _load_data_json("figures.json")


def reconstruct_from_recalls(recall_deceptive: float, recall_truthful: float,
                             support_deceptive: int = 170,
                             support_truthful: int = 150) -> ConfusionMatrix:
    """Rebuild a confusion matrix from printed per-class recalls."""
    td = int(round_half_up(recall_deceptive * support_deceptive, 0))
    tt = int(round_half_up(recall_truthful * support_truthful, 0))
    return ConfusionMatrix(counts=((td, support_deceptive - td),
                                   (support_truthful - tt, tt)))


def compare_with_baseline(results: list[MetricsReport], baseline: BaselineTable) -> str:
    """Signed accuracy/f1 deltas (this run minus the stored study column)."""
    header = (
        f"{'classifier':<22} {'acc%':>8} {'ref acc%':>9} {'Δacc':>7}"
        f" {'f1':>6} {'ref f1':>7} {'Δf1':>7}"
    )
    lines = [header, "-" * len(header)]
    for report in results:
        row = baseline.row_for_kind(report.classifier_kind)
        acc = report.accuracy * 100.0
        f1 = report.weighted_avg.f1
        lines.append(
            f"{row.classifier:<22} {acc:>8.2f} {row.this_accuracy:>9.2f}"
            f" {acc - row.this_accuracy:>+7.2f} {f1:>6.2f} {row.this_f1:>7.2f}"
            f" {f1 - row.this_f1:>+7.2f}"
        )
    return "\n".join(lines) + "\n"
