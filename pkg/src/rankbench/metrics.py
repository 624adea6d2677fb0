"""Evaluation metrics: ground-truth closeness, stability, and the scalar
summaries of validation curves.

Ground-truth metrics compare an estimated importance/support vector
against the known relevance of a synthetic dataset. Stability metrics
quantify how much the rankings move across bootstrap refits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    DegenerateSelectionError,
    DegenerateTruthError,
    InsufficientBootstrapsError,
    LengthMismatchError,
    NonPositiveMaxError,
)

LOGLOSS_CLIP = 1e-15


@dataclass(frozen=True)
class ValidationCurve:
    """Scores for the k best-feature subsets, k = 1..min(p, cap)."""

    subset_sizes: np.ndarray
    scores: np.ndarray
    aggregated: bool = False  # True once averaged over bootstraps

    def __post_init__(self):
        sizes = np.asarray(self.subset_sizes, dtype=np.int64)
        scores = np.asarray(self.scores, dtype=np.float64)
        if sizes.size != scores.size or sizes.size == 0:
            raise ValueError("curve needs matching, non-empty sizes and scores")
        if sizes.size > 1 and not np.all(np.diff(sizes) > 0):
            raise ValueError("subset sizes must be strictly increasing")
        object.__setattr__(self, "subset_sizes", sizes)
        object.__setattr__(self, "scores", scores)


@dataclass(frozen=True)
class StabilityReport:
    per_feature_stdev: np.ndarray
    mean_stdev: float
    weighted_variance_sum: Optional[float] = None
    nogueira_phi: Optional[float] = None


def _check_lengths(a, b):
    if len(a) != len(b):
        raise LengthMismatchError("vectors have different lengths")


def importance_r2(w_true, w_hat) -> float:
    """R^2 of the estimated importances against the ground truth.

    1 means a perfect estimate; 0 means no better than predicting the
    mean of the truth; negative is worse than that. Undefined for a
    uniform truth vector (zero total sum of squares).
    """
    w_true = np.asarray(w_true, dtype=np.float64)
    w_hat = np.asarray(w_hat, dtype=np.float64)
    _check_lengths(w_true, w_hat)
    rss = float(((w_true - w_hat) ** 2).sum())
    tss = float(((w_true - w_true.mean()) ** 2).sum())
    if tss == 0.0:
        raise DegenerateTruthError("uniform ground-truth importances: R2 undefined")
    return 1.0 - rss / tss


def importance_logloss(s_true, w_hat) -> float:
    """Binary cross-entropy of importances against the relevance mask.

    Each importance is read as the probability that its feature is
    relevant; values are clipped away from {0, 1} before the logs.
    Lower is better.
    """
    s = np.asarray(s_true, dtype=np.float64)
    w = np.asarray(w_hat, dtype=np.float64)
    _check_lengths(s, w)
    w = np.clip(w, LOGLOSS_CLIP, 1.0 - LOGLOSS_CLIP)
    return float(-(s * np.log(w) + (1.0 - s) * np.log(1.0 - w)).mean())


def support_accuracy(s_true, s_hat) -> float:
    """Fraction of features whose selected/not-selected flag matches."""
    s_true = np.asarray(s_true, dtype=bool)
    s_hat = np.asarray(s_hat, dtype=bool)
    _check_lengths(s_true, s_hat)
    return float(np.mean(s_true == s_hat))


def importance_stability(W, weights=None) -> StabilityReport:
    """Stability of an importance matrix (B bootstraps x p features).

    Per-feature unbiased stdev over bootstraps, summarized by its mean.
    When the ground truth `weights` is given, also the inverse-weighted
    variance sum over the relevant features (w_i > 0 only).
    """
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] < 2:
        raise InsufficientBootstrapsError("stability needs at least two bootstraps")
    var = W.var(axis=0, ddof=1)
    stdev = np.sqrt(var)
    weighted = None
    if weights is not None:
        w = np.asarray(weights, dtype=np.float64)
        _check_lengths(w, var)
        mask = w > 0
        weighted = float((var[mask] / w[mask]).sum())
    return StabilityReport(per_feature_stdev=stdev,
                           mean_stdev=float(stdev.mean()),
                           weighted_variance_sum=weighted)


def nogueira_stability(subsets, p: int) -> float:
    """Nogueira's stability estimate of B selected-feature sets.

    1 when every bootstrap selected the same subset; around 0 for
    selection indistinguishable from chance; can go negative. Undefined
    when the mean subset size is 0 or p.
    """
    B = len(subsets)
    if B < 2:
        raise InsufficientBootstrapsError("need at least two subsets")
    Z = np.zeros((B, p))
    for b, s in enumerate(subsets):
        for i in s:
            if not 0 <= int(i) < p:
                raise ValueError(f"feature index {i} outside [0, {p})")
            Z[b, int(i)] = 1.0
    kbar = float(Z.sum(axis=1).mean())
    denom = (kbar / p) * (1.0 - kbar / p)
    if denom == 0.0:
        raise DegenerateSelectionError("all subsets empty or all full")
    var = Z.var(axis=0, ddof=1)
    return 1.0 - float(var.mean()) / denom


def mean_validation_score(curve: ValidationCurve) -> float:
    """Scalar summary of a bootstrap-averaged validation curve."""
    if not curve.aggregated:
        raise ValueError("curve must be bootstrap-averaged first")
    return float(curve.scores.mean())


def relative_performance(scores) -> np.ndarray:
    """Each score as a fraction of the best score (best -> 1.0)."""
    scores = np.asarray(scores, dtype=np.float64)
    if scores.size == 0:
        raise ValueError("need at least one score")
    best = float(scores.max())
    if best <= 0.0:
        raise NonPositiveMaxError("relative performance needs a positive best score")
    return scores / best
