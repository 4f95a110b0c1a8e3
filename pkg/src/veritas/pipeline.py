"""End-to-end experiment orchestration: load a corpus, build review vectors,
split, train every selected classifier, evaluate on the held-out side, rank,
and persist the best model as a bundle.

Everything downstream of the config is deterministic: the split and every
classifier draw randomness only from seeds recorded in the config, and the
vectorizer is fitted on training rows alone (test rows never leak into
vocabulary, idf, or scaler statistics).
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bundle import FeaturePipeline, ModelBundle, save_bundle
from .classifiers import FITTERS, KINDS, LabeledMatrix
from .corpus import ReviewSet, SplitIndex, load_csv_corpus, load_ott_corpus, stratified_split
from .embedding import (
    EmbeddingMatrix,
    LexicalConfig,
    align,
    fit_lexical_vectorizer,
    read_embedding_file,
    tokenize,
    vectorize_lexical,
)
from .errors import ConfigError, ConfigInvalid, DimensionMismatch, FingerprintMismatch, VeritasError
from .evaluation import MetricsReport, compute_metrics, confusion_matrix

KIND_ALIASES = {
    "svm": "svm",
    "gnb": "gnb",
    "nb": "gnb",
    "naive-bayes": "gnb",
    "knn": "knn",
    "dtree": "dtree",
    "tree": "dtree",
    "rforest": "rforest",
    "rf": "rforest",
    "random-forest": "rforest",
    "bagging": "bagging",
    "bag": "bagging",
    "adaboost": "adaboost",
    "ada": "adaboost",
    "logreg": "logreg",
    "lr": "logreg",
}

PAPER_SIX = ("svm", "rforest", "bagging", "adaboost", "gnb", "knn")


def canonical_kind(name: str) -> str:
    kind = KIND_ALIASES.get(name.strip().lower())
    if kind is None:
        raise ConfigError(f"unknown classifier kind {name!r} (known: {', '.join(KINDS)})")
    return kind


@dataclass
class CorpusConfig:
    kind: str = "ott"  # ott | csv
    path: str = ""
    text_col: str = "text"
    label_col: str = "label"
    label_map: dict[str, str] = field(default_factory=lambda: {"deceptive": "deceptive", "truthful": "truthful"})
    polarity_col: str | None = None
    delimiter: str = ","


@dataclass
class FeatureConfig:
    kind: str = "lexical"  # lexical | embedding_file
    path: str | None = None
    lexical: LexicalConfig = field(default_factory=LexicalConfig)
    pooling: dict = field(default_factory=lambda: {"kind": "mean", "max_tokens": 256})


@dataclass
class SplitConfig:
    ratio: float = 0.8
    seed: int = 42
    stratify: bool = True


@dataclass
class ClassifierSpec:
    kind: str
    params: dict = field(default_factory=dict)


@dataclass
class OutputConfig:
    bundle: str | None = None
    results: str | None = None
    report: str = "text"


@dataclass
class ExperimentConfig:
    corpus: CorpusConfig = field(default_factory=CorpusConfig)
    features: FeatureConfig = field(default_factory=FeatureConfig)
    split: SplitConfig = field(default_factory=SplitConfig)
    classifiers: list[ClassifierSpec] = field(
        default_factory=lambda: [ClassifierSpec(kind=k) for k in PAPER_SIX]
    )
    output: OutputConfig = field(default_factory=OutputConfig)

    def validate(self) -> None:
        if self.corpus.kind not in ("ott", "csv"):
            raise ConfigInvalid(f"corpus kind must be ott or csv, got {self.corpus.kind!r}")
        if not self.corpus.path:
            raise ConfigInvalid("corpus path is required")
        if self.features.kind not in ("lexical", "embedding_file"):
            raise ConfigInvalid(f"features kind must be lexical or embedding_file, got {self.features.kind!r}")
        if self.features.kind == "embedding_file" and not self.features.path:
            raise ConfigInvalid("embedding_file features need a path")
        if not 0.0 < self.split.ratio < 1.0:
            raise ConfigInvalid(f"split ratio must be in (0,1), got {self.split.ratio}")
        if not self.classifiers:
            raise ConfigInvalid("select at least one classifier")
        for spec in self.classifiers:
            if spec.kind not in KINDS:
                raise ConfigInvalid(f"unknown classifier kind {spec.kind!r}")
        if self.output.report not in ("text", "json"):
            raise ConfigInvalid("report format must be text or json")

    def to_dict(self) -> dict:
        return {
            "corpus": {
                "kind": self.corpus.kind,
                "path": self.corpus.path,
                "text_col": self.corpus.text_col,
                "label_col": self.corpus.label_col,
                "label_map": self.corpus.label_map,
                "polarity_col": self.corpus.polarity_col,
                "delimiter": self.corpus.delimiter,
            },
            "features": {
                "kind": self.features.kind,
                "path": self.features.path,
                "lexical": {
                    "min_df": self.features.lexical.min_df,
                    "max_features": self.features.lexical.max_features,
                    "lowercase": self.features.lexical.lowercase,
                },
                "pooling": self.features.pooling,
            },
            "split": {
                "ratio": self.split.ratio,
                "seed": self.split.seed,
                "stratify": self.split.stratify,
            },
            "classifiers": [{"kind": s.kind, **s.params} for s in self.classifiers],
            "output": {
                "bundle": self.output.bundle,
                "results": self.output.results,
                "report": self.output.report,
            },
        }

    def fingerprint(self) -> str:
        """Hash of everything that determines the trained models; output
        paths deliberately excluded so artifact location never changes
        bundle bytes."""
        doc = self.to_dict()
        doc.pop("output", None)
        return _sha256(json.dumps(doc, sort_keys=True))

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        cfg = cls()
        corpus = d.get("corpus", {})
        for key in ("kind", "path", "text_col", "label_col", "label_map", "polarity_col", "delimiter"):
            if key in corpus:
                setattr(cfg.corpus, key, corpus[key])
        feats = d.get("features", {})
        if "kind" in feats:
            cfg.features.kind = feats["kind"]
        if "path" in feats:
            cfg.features.path = feats["path"]
        if "lexical" in feats:
            cfg.features.lexical = LexicalConfig(**feats["lexical"])
        if "pooling" in feats:
            cfg.features.pooling = feats["pooling"]
        split = d.get("split", {})
        for key in ("ratio", "seed", "stratify"):
            if key in split:
                setattr(cfg.split, key, split[key])
        if "classifiers" in d:
            specs = []
            for item in d["classifiers"]:
                if isinstance(item, str):
                    specs.append(ClassifierSpec(kind=canonical_kind(item)))
                else:
                    params = dict(item)
                    kind = canonical_kind(params.pop("kind"))
                    specs.append(ClassifierSpec(kind=kind, params=params))
            cfg.classifiers = specs
        output = d.get("output", {})
        for key in ("bundle", "results", "report"):
            if key in output:
                setattr(cfg.output, key, output[key])
        return cfg


def load_config_file(path: str | Path) -> ExperimentConfig:
    try:
        raw = json.loads(Path(path).read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON config ({exc})") from exc
    return ExperimentConfig.from_dict(raw)


@dataclass
class ExperimentResult:
    reports: dict[str, MetricsReport]
    confusions: dict[str, list[list[int]]]
    ranking: list[str]
    best_kind: str
    split_fingerprint: str
    config: dict
    timings_ms: dict[str, float]
    train_size: int
    test_size: int

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {
            "config": self.config,
            "split": {
                "fingerprint": self.split_fingerprint,
                "train_size": self.train_size,
                "test_size": self.test_size,
            },
            "reports": {
                kind: {"confusion": self.confusions[kind], "metrics": report.to_dict()}
                for kind, report in self.reports.items()
            },
            "ranking": self.ranking,
            "best_kind": self.best_kind,
        }
        if include_timings:
            out["timings_ms"] = self.timings_ms
        return out

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), indent=2, sort_keys=True)


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def split_fingerprint(split: SplitIndex) -> str:
    return _sha256(json.dumps({"train": list(split.train_ids), "test": list(split.test_ids)}))


def load_corpus(cfg: CorpusConfig) -> ReviewSet:
    if cfg.kind == "ott":
        return load_ott_corpus(cfg.path)
    return load_csv_corpus(
        cfg.path,
        text_col=cfg.text_col,
        label_col=cfg.label_col,
        label_map=cfg.label_map,
        delimiter=cfg.delimiter,
        polarity_col=cfg.polarity_col,
    )


def effective_seed(cfg: ExperimentConfig) -> int:
    env = os.environ.get("VERITAS_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError(f"VERITAS_SEED must be an integer, got {env!r}") from exc
    return cfg.split.seed


@contextmanager
def _stage(name: str):
    """Prefix propagated errors with the pipeline stage that raised them."""
    try:
        yield
    except VeritasError as exc:
        if exc.args and isinstance(exc.args[0], str):
            exc.args = (f"[stage {name}] {exc.args[0]}",) + exc.args[1:]
        raise


def _labeled(matrix: EmbeddingMatrix, corpus: ReviewSet, ids) -> LabeledMatrix:
    sub = align(matrix, list(ids))
    return LabeledMatrix(
        X=sub.values.astype(np.float64),
        y=tuple(corpus.labels(list(ids))),
        ids=tuple(ids),
    )


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Execute the four pipeline stages and persist the best model.

    Returns per-classifier reports ranked by (accuracy, macro f1, kind).
    """
    config.validate()
    timings: dict[str, float] = {}

    t0 = time.monotonic()
    with _stage("load"):
        corpus = load_corpus(config.corpus)
    timings["load"] = (time.monotonic() - t0) * 1000.0

    t0 = time.monotonic()
    with _stage("split"):
        seed = effective_seed(config)
        split = stratified_split(corpus, config.split.ratio, seed, config.split.stratify)
    timings["split"] = (time.monotonic() - t0) * 1000.0

    t0 = time.monotonic()
    vectorizer = None
    with _stage("features"):
        if config.features.kind == "lexical":
            vectorizer = fit_lexical_vectorizer(
                corpus.texts(list(split.train_ids)), config.features.lexical
            )
            matrix = vectorize_lexical(vectorizer, corpus.texts(), ids=corpus.ids)
            pipeline = FeaturePipeline(
                kind="lexical",
                fingerprint=matrix.fingerprint,
                pooling=config.features.pooling,
                vectorizer=vectorizer,
            )
        else:
            matrix = read_embedding_file(config.features.path)
            matrix = align(matrix, corpus.ids)  # also validates coverage
            pipeline = FeaturePipeline(
                kind="embedding_file",
                fingerprint=matrix.fingerprint,
                pooling=config.features.pooling,
            )
        train = _labeled(matrix, corpus, split.train_ids)
        test = _labeled(matrix, corpus, split.test_ids)
    timings["features"] = (time.monotonic() - t0) * 1000.0

    y_test = list(test.y)
    reports: dict[str, MetricsReport] = {}
    confusions: dict[str, list[list[int]]] = {}
    models = {}
    for spec in config.classifiers:
        t0 = time.monotonic()
        with _stage(f"train.{spec.kind}"):
            model = FITTERS[spec.kind](train, **spec.params)
        timings[f"train.{spec.kind}"] = (time.monotonic() - t0) * 1000.0
        t0 = time.monotonic()
        with _stage(f"eval.{spec.kind}"):
            y_pred = model.predict(test.X)
            cm = confusion_matrix(y_test, y_pred)
            reports[spec.kind] = compute_metrics(cm, classifier_kind=spec.kind)
            confusions[spec.kind] = cm.as_array().tolist()
        timings[f"eval.{spec.kind}"] = (time.monotonic() - t0) * 1000.0
        models[spec.kind] = model

    ranking = sorted(
        reports,
        key=lambda kind: (-reports[kind].accuracy, -reports[kind].macro_avg.f1, kind),
    )
    best_kind = ranking[0]

    fingerprint = split_fingerprint(split)
    result = ExperimentResult(
        reports=reports,
        confusions=confusions,
        ranking=ranking,
        best_kind=best_kind,
        split_fingerprint=fingerprint,
        config=config.to_dict(),
        timings_ms=timings,
        train_size=len(split.train_ids),
        test_size=len(split.test_ids),
    )

    t0 = time.monotonic()
    with _stage("persist"):
        if config.output.bundle:
            bundle = ModelBundle(
                model=models[best_kind],
                features=pipeline,
                metadata={
                    "config_fingerprint": config.fingerprint(),
                    "split_fingerprint": fingerprint,
                    "corpus_name": corpus.name,
                    "train_size": len(split.train_ids),
                    "test_size": len(split.test_ids),
                    "best_kind": best_kind,
                },
            )
            save_bundle(bundle, config.output.bundle)
        if config.output.results:
            Path(config.output.results).write_text(result.to_json(), encoding="utf-8")
    timings["persist"] = (time.monotonic() - t0) * 1000.0
    return result


@dataclass(frozen=True)
class Prediction:
    label: str
    decision_score: float


def predict_text(bundle: ModelBundle, text: str) -> Prediction:
    """Tokenize, vectorize with the bundle's lexical pipeline, classify."""
    if bundle.features.kind != "lexical" or bundle.features.vectorizer is None:
        raise FingerprintMismatch(
            "bundle features are not lexical; supply a pooled vector via predict_vector"
        )
    tokenize(text, lowercase=bundle.features.vectorizer.config.lowercase)  # EmptyText guard
    matrix = vectorize_lexical(bundle.features.vectorizer, [text])
    label = bundle.model.predict(matrix.values)[0]
    score = float(bundle.model.decision_scores(matrix.values)[0])
    return Prediction(label=label, decision_score=score)


def predict_vector(bundle: ModelBundle, vector) -> Prediction:
    """Classify a caller-supplied pooled vector of matching dimension."""
    row = np.asarray(vector, dtype=np.float64).reshape(1, -1)
    if row.shape[1] != bundle.model.feature_dim:
        raise DimensionMismatch(
            f"vector dim {row.shape[1]} vs model dim {bundle.model.feature_dim}"
        )
    label = bundle.model.predict(row)[0]
    return Prediction(label=label, decision_score=float(bundle.model.decision_scores(row)[0]))


def evaluate_bundle(
    bundle: ModelBundle,
    corpus: ReviewSet,
    embedding_path: str | Path | None = None,
) -> tuple[MetricsReport, list[list[int]]]:
    """Predict a whole corpus with a loaded bundle and score it."""
    if bundle.features.kind == "lexical":
        matrix = vectorize_lexical(bundle.features.vectorizer, corpus.texts(), ids=corpus.ids)
    else:
        if embedding_path is None:
            raise ConfigError("this bundle needs --features FILE with the embedding file")
        matrix = read_embedding_file(embedding_path)
        if bundle.features.fingerprint and matrix.fingerprint != bundle.features.fingerprint:
            raise FingerprintMismatch(
                f"embedding fingerprint {matrix.fingerprint!r} does not match bundle"
            )
        matrix = align(matrix, corpus.ids)
    y_pred = bundle.model.predict(matrix.values)
    cm = confusion_matrix(corpus.labels(), y_pred)
    kind = bundle.model.kind
    return compute_metrics(cm, classifier_kind=kind), cm.as_array().tolist()
