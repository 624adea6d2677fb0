"""Feature-ranking representations and the conversions between them.

Three interchangeable views of a fitted ranking over p features:

* importance vector -- nonnegative reals summing to 1 (a probability vector)
* support vector    -- boolean mask of selected features
* rank vector       -- permutation of {1..p}, higher rank = more important

All functions are pure and operate on plain numpy arrays; indices are
0-based throughout.
"""

from __future__ import annotations

import numpy as np

from .errors import AllZeroError, IndexOutOfRangeError

SUM_TOLERANCE = 1e-9


def normalize_importances(raw) -> np.ndarray:
    """Turn an arbitrary-scale score vector into an importance vector.

    Negative scores are clipped to zero, then the vector is divided by its
    sum. Raises AllZeroError when nothing positive remains.
    """
    v = np.asarray(raw, dtype=np.float64)
    if v.ndim != 1 or v.size < 1:
        raise ValueError("expected a 1-d vector with at least one element")
    v = np.clip(v, 0.0, None)
    total = v.sum()
    if total <= 0.0:
        raise AllZeroError("cannot normalize: no element is positive")
    return v / total


def is_importance_vector(w, tol: float = SUM_TOLERANCE) -> bool:
    w = np.asarray(w, dtype=np.float64)
    return (
        w.ndim == 1
        and w.size >= 1
        and bool(np.all(w >= 0.0))
        and abs(float(w.sum()) - 1.0) <= tol
    )


def threshold_support(w, epsilon: float = 0.0) -> np.ndarray:
    """Boolean mask of features whose importance strictly exceeds epsilon."""
    if epsilon < 0.0:
        raise ValueError("epsilon must be >= 0")
    w = np.asarray(w, dtype=np.float64)
    return w > epsilon


def to_sparse(support) -> set[int]:
    """Support mask -> set of selected feature indices."""
    s = np.asarray(support, dtype=bool)
    return {int(i) for i in np.flatnonzero(s)}


def from_sparse(indices, p: int) -> np.ndarray:
    """Index set -> support mask of length p."""
    out = np.zeros(p, dtype=bool)
    for i in indices:
        i = int(i)
        if not 0 <= i < p:
            raise IndexOutOfRangeError(f"index {i} outside [0, {p})")
        out[i] = True
    return out


def rank_from_importances(w) -> np.ndarray:
    """Convert importances to a rank vector (permutation of 1..p).

    Higher importance gets a higher rank. Ties break toward the lower
    feature index receiving the higher rank, so runs are reproducible.
    """
    w = np.asarray(w, dtype=np.float64)
    p = w.size
    # lexsort uses the last key as primary: importance descending, then
    # feature index ascending among ties.
    order = np.lexsort((np.arange(p), -w))
    ranks = np.empty(p, dtype=np.int64)
    ranks[order] = np.arange(p, 0, -1)
    return ranks


def order_from_importances(w) -> np.ndarray:
    """Feature indices from most to least important (same tie rule)."""
    w = np.asarray(w, dtype=np.float64)
    return np.lexsort((np.arange(w.size), -w))


def order_from_ranking(ranks) -> np.ndarray:
    """Feature indices from most to least important given a rank vector."""
    r = np.asarray(ranks)
    return np.argsort(-r, kind="stable")


def validate_rank_vector(ranks) -> np.ndarray:
    r = np.asarray(ranks, dtype=np.int64)
    if r.ndim != 1 or not np.array_equal(np.sort(r), np.arange(1, r.size + 1)):
        raise ValueError("rank vector must be a permutation of 1..p")
    return r
