"""Fake-review detection toolkit.

Review corpora -> fixed-length review vectors -> from-scratch supervised
classifiers -> confusion-matrix reports -> best-model bundles.
"""

__version__ = "0.1.0"

from .corpus import Review, ReviewSet, SplitIndex, load_csv_corpus, load_ott_corpus, stratified_split
from .embedding import (
    EmbeddingMatrix,
    LexicalConfig,
    LexicalVectorizer,
    PoolingStrategy,
    align,
    fit_lexical_vectorizer,
    pool,
    read_embedding_file,
    tokenize,
    vectorize_lexical,
    write_embedding_file,
)
from .classifiers import (
    LabeledMatrix,
    fit_adaboost,
    fit_bagging,
    fit_dtree,
    fit_gnb,
    fit_knn,
    fit_logreg,
    fit_rforest,
    fit_svm,
    predict,
    predict_knn,
)
from .evaluation import (
    ConfusionMatrix,
    MetricsReport,
    compare_with_baseline,
    compute_metrics,
    confusion_matrix,
    load_baseline_table,
    render_report,
)
from .bundle import ModelBundle, load_bundle, save_bundle
from .pipeline import (
    ExperimentConfig,
    ExperimentResult,
    predict_text,
    predict_vector,
    run_experiment,
)

__all__ = [
    "__version__",
    "Review",
    "ReviewSet",
    "SplitIndex",
    "load_ott_corpus",
    "load_csv_corpus",
    "stratified_split",
    "EmbeddingMatrix",
    "LexicalConfig",
    "LexicalVectorizer",
    "PoolingStrategy",
    "tokenize",
    "pool",
    "fit_lexical_vectorizer",
    "vectorize_lexical",
    "read_embedding_file",
    "write_embedding_file",
    "align",
    "LabeledMatrix",
    "fit_svm",
    "fit_gnb",
    "fit_knn",
    "predict_knn",
    "fit_dtree",
    "fit_rforest",
    "fit_bagging",
    "fit_adaboost",
    "fit_logreg",
    "predict",
    "ConfusionMatrix",
    "MetricsReport",
    "confusion_matrix",
    "compute_metrics",
    "render_report",
    "compare_with_baseline",
    "load_baseline_table",
    "ModelBundle",
    "save_bundle",
    "load_bundle",
    "ExperimentConfig",
    "ExperimentResult",
    "run_experiment",
    "predict_text",
    "predict_vector",
]
