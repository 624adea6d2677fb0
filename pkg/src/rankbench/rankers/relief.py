"""Relief-based rankers.

Feature weights move toward +1 when nearest same-class neighbors (hits)
look alike on the feature and nearest other-class neighbors (misses)
differ, and toward -1 in the opposite case. Per-feature differences are
scaled by the feature's range so all features contribute comparably.

`relieff` is the multi-class variant: k neighbors per group, plain
(absolute) differences, misses weighted by class prior P(C)/(1 - P(own)).
`relief` is the original binary algorithm: one neighbor each, squared
differences, Euclidean neighbor search.

Fitting cost is iterations * n * p. By default relieff scans at most 1000
sampled instances (the weight estimates converge well before that), which
keeps fitting near-linear in n for large datasets; pass n_iterations
explicitly for a full sweep.
"""

from __future__ import annotations

import numpy as np

from .. import core, kernels
from ..errors import SingleClassError, TaskMismatchError
from ..sampling import derive_rng
from .base import FeatureRanking, Ranker, RankerCapabilities

DEFAULT_ITERATION_CAP = 1000


def relief_weights(X, y, k_neighbors: int, n_iterations: int | None,
                   seed: int, squared: bool, euclidean: bool) -> np.ndarray:
    """Raw Relief weights in [-1, 1]; see module docstring for the rules."""
    X = np.asarray(X, dtype=np.float64)
    n, _ = X.shape
    classes, codes = np.unique(np.asarray(y), return_inverse=True)
    if len(classes) < 2:
        raise SingleClassError("relief needs at least two classes")
    codes = codes.astype(np.int64)
    priors = np.bincount(codes, minlength=len(classes)) / n

    if n_iterations is None:
        n_iterations = min(n, DEFAULT_ITERATION_CAP)
    n_iterations = min(int(n_iterations), n)
    if n_iterations < 1:
        raise ValueError("n_iterations must be >= 1")
    if n_iterations == n:
        rows = np.arange(n, dtype=np.int64)
    else:
        rows = np.sort(derive_rng(seed, "relief-rows").choice(n, n_iterations,
                                                              replace=False))
        rows = rows.astype(np.int64)

    spread = X.max(axis=0) - X.min(axis=0)
    scale = np.where(spread > 0, 1.0 / np.where(spread > 0, spread, 1.0), 0.0)

    return kernels.relief_scan(X, codes, len(classes), priors,
                               int(k_neighbors), rows, scale,
                               squared, euclidean)


class ReliefFRanker(Ranker):
    name = "relieff"
    capabilities = RankerCapabilities(supports_classification=True,
                                      estimates_importances=True)

    def __init__(self, k_neighbors: int = 10, n_iterations: int | None = None,
                 seed: int = 0):
        if k_neighbors < 1:
            raise ValueError("k_neighbors must be >= 1")
        self.k_neighbors = k_neighbors
        self.n_iterations = n_iterations
        self.seed = seed

    def fit(self, X, y, task: str = "classification") -> FeatureRanking:
        self._check_task(task)
        w = relief_weights(X, y, self.k_neighbors, self.n_iterations,
                           self.seed, squared=False, euclidean=False)
        return FeatureRanking(importances=core.normalize_importances(w))


class ReliefRanker(Ranker):
    """Original binary Relief: k=1, squared diffs, Euclidean neighbors."""

    name = "relief"
    capabilities = RankerCapabilities(supports_classification=True,
                                      estimates_importances=True)

    def __init__(self, n_iterations: int | None = None, seed: int = 0):
        self.n_iterations = n_iterations
        self.seed = seed

    def fit(self, X, y, task: str = "classification") -> FeatureRanking:
        self._check_task(task)
        if len(np.unique(np.asarray(y))) > 2:
            raise TaskMismatchError("relief handles binary problems only; use relieff")
        n = np.asarray(X).shape[0]
        iterations = self.n_iterations if self.n_iterations is not None else n
        w = relief_weights(X, y, 1, iterations, self.seed,
                           squared=True, euclidean=True)
        return FeatureRanking(importances=core.normalize_importances(w))
