"""Per-feature statistical rankers: one-way ANOVA F and chi-squared."""

from __future__ import annotations

import numpy as np

from .. import core
from ..errors import NegativeFeatureError, SingleClassError
from .base import FeatureRanking, Ranker, RankerCapabilities


def _class_codes(y):
    classes, codes = np.unique(np.asarray(y), return_inverse=True)
    if len(classes) < 2:
        raise SingleClassError("need at least two classes")
    return classes, codes


def anova_f_scores(X, y) -> np.ndarray:
    """One-way F statistic per feature: between-group over within-group MS.

    Constant features score 0. Features whose within-group variance is
    exactly zero while groups differ get +inf (perfect separators).
    """
    X = np.asarray(X, dtype=np.float64)
    n, p = X.shape
    _, codes = _class_codes(y)
    n_classes = int(codes.max()) + 1
    counts = np.bincount(codes, minlength=n_classes).astype(np.float64)
    grand = X.mean(axis=0)
    sums = np.zeros((n_classes, p))
    np.add.at(sums, codes, X)
    means = sums / counts[:, None]
    ssb = (counts[:, None] * (means - grand) ** 2).sum(axis=0)
    ssw = ((X - means[codes]) ** 2).sum(axis=0)
    msb = ssb / (n_classes - 1)
    msw = ssw / max(n - n_classes, 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.where(msw > 0, msb / msw, np.where(msb > 0, np.inf, 0.0))
    return f


class AnovaFRanker(Ranker):
    name = "anova_f"
    capabilities = RankerCapabilities(supports_classification=True,
                                      estimates_importances=True)

    def fit(self, X, y, task: str = "classification") -> FeatureRanking:
        self._check_task(task)
        f = anova_f_scores(X, y)
        if np.isinf(f).any():
            # perfect separators take all the mass, shared equally
            f = np.where(np.isinf(f), 1.0, 0.0)
        return FeatureRanking(importances=core.normalize_importances(f))


def chi2_scores(X, y) -> np.ndarray:
    """Chi-squared per feature over class-wise feature sums.

    Observed = per-class sum of the feature; expected = class frequency
    times the feature total. Requires nonnegative features.
    """
    X = np.asarray(X, dtype=np.float64)
    if (X < 0).any():
        raise NegativeFeatureError("chi2 requires nonnegative feature values")
    _, codes = _class_codes(y)
    n_classes = int(codes.max()) + 1
    freq = np.bincount(codes, minlength=n_classes) / len(codes)
    observed = np.zeros((n_classes, X.shape[1]))
    np.add.at(observed, codes, X)
    expected = freq[:, None] * X.sum(axis=0)[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(expected > 0, (observed - expected) ** 2 / expected, 0.0)
    return terms.sum(axis=0)


class Chi2Ranker(Ranker):
    name = "chi2"
    capabilities = RankerCapabilities(supports_classification=True,
                                      estimates_importances=True,
                                      requires_nonnegative=True)

    def fit(self, X, y, task: str = "classification") -> FeatureRanking:
        self._check_task(task)
        return FeatureRanking(importances=core.normalize_importances(chi2_scores(X, y)))
