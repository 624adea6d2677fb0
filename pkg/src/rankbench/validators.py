"""Validation estimators that score candidate feature subsets.

Two predictors, each usable for classification and regression: k-nearest
neighbors (Euclidean, majority vote / neighbor mean) and the CART tree
from `tree`. Determinism rules: distance ties go to the lower train-row
index, vote ties to the smallest class label.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    ConfigError,
    DimensionMismatchError,
    EmptyTrainError,
    LengthMismatchError,
    SpecInvalidError,
)
from .tree import DecisionTree

R2_SENTINEL = -1e18  # stands in for -inf when TSS == 0 but RSS > 0


@dataclass(frozen=True)
class ValidatorSpec:
    kind: str = "knn"
    task: str = "classification"
    k: int = 5

    def validate(self, n_train: int | None = None) -> None:
        if self.kind not in ("knn", "decision_tree"):
            raise ConfigError(f"unknown validator {self.kind!r}")
        if self.kind == "knn":
            if self.k < 1:
                raise SpecInvalidError("knn k must be >= 1")
            if n_train is not None and self.k > n_train:
                raise SpecInvalidError(f"knn k={self.k} exceeds n_train={n_train}")


def fit_predict(spec: ValidatorSpec, X_train, y_train, X_test) -> np.ndarray:
    X_train = np.asarray(X_train, dtype=np.float64)
    X_test = np.asarray(X_test, dtype=np.float64)
    if X_train.shape[0] == 0:
        raise EmptyTrainError("validator fit with empty training set")
    if X_train.shape[1] != X_test.shape[1]:
        raise DimensionMismatchError(
            f"train has {X_train.shape[1]} columns, test has {X_test.shape[1]}")
    spec.validate(n_train=X_train.shape[0])

    if spec.kind == "decision_tree":
        tree = DecisionTree(task=spec.task).fit(X_train, y_train)
        return tree.predict(X_test)

    neighbors = kernels.knn_neighbors(X_train, X_test, spec.k)
    if spec.task == "classification":
        classes, codes = np.unique(np.asarray(y_train), return_inverse=True)
        votes = codes[neighbors]
        counts = np.zeros((X_test.shape[0], len(classes)), dtype=np.int64)
        np.add.at(counts, (np.arange(len(votes))[:, None], votes), 1)
        return classes[np.argmax(counts, axis=1)]  # first max = smallest label
    y_train = np.asarray(y_train, dtype=np.float64)
    return y_train[neighbors].mean(axis=1)


def score(task: str, y_true, y_pred) -> float:
    """Accuracy for classification, R^2 for regression."""
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if len(y_true) != len(y_pred):
        raise LengthMismatchError("y_true and y_pred lengths differ")
    if len(y_true) < 1:
        raise LengthMismatchError("need at least one sample to score")
    if task == "classification":
        return float(np.mean(y_true == y_pred))
    rss = float(((y_true.astype(np.float64) - y_pred.astype(np.float64)) ** 2).sum())
    tss = float(((y_true - y_true.mean()) ** 2).sum())
    if tss == 0.0:
        return 0.0 if rss == 0.0 else R2_SENTINEL
    return 1.0 - rss / tss
