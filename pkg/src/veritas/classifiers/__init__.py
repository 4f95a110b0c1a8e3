"""From-scratch binary classifiers over review vectors.

Eight kinds share one fitted-model interface: linear SVM (SMO), Gaussian
Naive Bayes, k-NN, decision tree, random forest, bagging, AdaBoost stumps,
and logistic regression.  ``deceptive`` is the positive class throughout.
"""

from .base import (
    ClassifierModel,
    LabeledMatrix,
    Scaler,
    model_from_dict,
    predict,
)
from .bayes import GnbModel, fit_gnb
from .ensemble import (
    AdaBoostModel,
    BaggingModel,
    ForestModel,
    fit_adaboost,
    fit_bagging,
    fit_rforest,
)
from .linear import LogRegModel, fit_logreg
from .neighbors import KnnModel, fit_knn, predict_knn
from .svm import SvmModel, fit_svm
from .tree import TreeModel, fit_dtree

KINDS = ("svm", "gnb", "knn", "dtree", "rforest", "bagging", "adaboost", "logreg")

FITTERS = {
    "svm": fit_svm,
    "gnb": fit_gnb,
    "knn": fit_knn,
    "dtree": fit_dtree,
    "rforest": fit_rforest,
    "bagging": fit_bagging,
    "adaboost": fit_adaboost,
    "logreg": fit_logreg,
}

__all__ = [
    "ClassifierModel",
    "LabeledMatrix",
    "Scaler",
    "KINDS",
    "FITTERS",
    "model_from_dict",
    "predict",
    "fit_svm",
    "fit_gnb",
    "fit_knn",
    "predict_knn",
    "fit_dtree",
    "fit_rforest",
    "fit_bagging",
    "fit_adaboost",
    "fit_logreg",
    "SvmModel",
    "GnbModel",
    "KnnModel",
    "TreeModel",
    "ForestModel",
    "BaggingModel",
    "AdaBoostModel",
    "LogRegModel",
]
