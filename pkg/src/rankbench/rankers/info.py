"""Information-theoretic rankers: mutual information and symmetrical
uncertainty, both on discretized variables (plug-in estimates, nats).

Continuous variables are binned into equal-frequency bins (default 10,
fewer for tiny samples); anything with fewer than 20 distinct values is
treated as already discrete.
"""

from __future__ import annotations

import numpy as np

from .. import core
from .base import FeatureRanking, Ranker, RankerCapabilities

DISCRETE_THRESHOLD = 20


def default_bins(n: int) -> int:
    return 10 if n >= 20 else max(2, n // 2)


def discretize(x, n_bins: int | None = None) -> np.ndarray:
    """Integer codes for a 1-d variable; equal-frequency bins if continuous."""
    x = np.asarray(x)
    distinct = np.unique(x)
    if distinct.size < DISCRETE_THRESHOLD:
        return np.searchsorted(distinct, x).astype(np.int64)
    if n_bins is None:
        n_bins = default_bins(x.size)
    edges = np.quantile(x, np.linspace(0.0, 1.0, n_bins + 1)[1:-1])
    edges = np.unique(edges)
    return np.searchsorted(edges, x, side="right").astype(np.int64)


def entropy_from_codes(codes) -> float:
    counts = np.bincount(codes)
    p = counts[counts > 0] / codes.size
    return float(-(p * np.log(p)).sum())


def mutual_information(codes_a, codes_b) -> float:
    """Plug-in MI in nats from the empirical joint distribution."""
    na = int(codes_a.max()) + 1
    nb = int(codes_b.max()) + 1
    joint = np.bincount(codes_a * nb + codes_b, minlength=na * nb).reshape(na, nb)
    pxy = joint / joint.sum()
    px = pxy.sum(axis=1)
    py = pxy.sum(axis=0)
    nz = pxy > 0
    ratio = pxy[nz] / (px[:, None] * py[None, :])[nz]
    return float((pxy[nz] * np.log(ratio)).sum())


def mutual_info_scores(X, y, n_bins: int | None = None) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    y_codes = discretize(np.asarray(y), n_bins)
    out = np.empty(X.shape[1])
    for f in range(X.shape[1]):
        out[f] = mutual_information(discretize(X[:, f], n_bins), y_codes)
    return np.clip(out, 0.0, None)


def symmetrical_uncertainty_scores(X, y, n_bins: int | None = None) -> np.ndarray:
    """SU = 2 * MI / (H(X) + H(Y)) per feature, in [0, 1]; 0 when both
    entropies vanish."""
    X = np.asarray(X, dtype=np.float64)
    y_codes = discretize(np.asarray(y), n_bins)
    hy = entropy_from_codes(y_codes)
    out = np.empty(X.shape[1])
    for f in range(X.shape[1]):
        codes = discretize(X[:, f], n_bins)
        hx = entropy_from_codes(codes)
        denom = hx + hy
        if denom <= 0.0:
            out[f] = 0.0
        else:
            out[f] = 2.0 * mutual_information(codes, y_codes) / denom
    return np.clip(out, 0.0, 1.0)


class MutualInfoRanker(Ranker):
    name = "mutual_info"
    capabilities = RankerCapabilities(supports_classification=True,
                                      supports_regression=True,
                                      estimates_importances=True)

    def __init__(self, n_bins: int | None = None):
        self.n_bins = n_bins

    def fit(self, X, y, task: str = "classification") -> FeatureRanking:
        self._check_task(task)
        scores = mutual_info_scores(X, y, self.n_bins)
        return FeatureRanking(importances=core.normalize_importances(scores))


class SymmetricalUncertaintyRanker(Ranker):
    name = "su"
    capabilities = RankerCapabilities(supports_classification=True,
                                      supports_regression=True,
                                      estimates_importances=True)

    def __init__(self, n_bins: int | None = None):
        self.n_bins = n_bins

    def fit(self, X, y, task: str = "classification") -> FeatureRanking:
        self._check_task(task)
        scores = symmetrical_uncertainty_scores(X, y, self.n_bins)
        return FeatureRanking(importances=core.normalize_importances(scores))
