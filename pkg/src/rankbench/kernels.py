"""Hot numeric kernels with numba-compiled and pure-numpy implementations.

The expensive inner loops live here: the Relief hit/miss neighbor scan,
k-nearest-neighbor prediction, and the sorted-sweep split search used by
the decision tree. Each kernel has two implementations:

* a loop-oriented version compiled with ``numba.njit`` (default), and
* a vectorized pure-numpy fallback.

Set ``RANKBENCH_NO_NUMBA=1`` in the environment (before import) to force
the numpy path; the flag also kicks in automatically when numba is not
installed. Both paths use the same tie-breaking rules (stable sorts,
lower index wins) so results agree; ``benchmarks/bench_kernels.py``
compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("RANKBENCH_NO_NUMBA", "").strip().lower()
_DISABLED = _FLAG in ("1", "true", "yes")

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    njit = None
    NUMBA_AVAILABLE = False

NUMBA_ENABLED = NUMBA_AVAILABLE and not _DISABLED


# ---------------------------------------------------------------------------
# Relief hit/miss scan
# ---------------------------------------------------------------------------

def _relief_scan_loops(X, y, n_classes, priors, k, sample_rows, scale,
                       squared, euclidean):
    n, p = X.shape
    m = sample_rows.shape[0]
    w = np.zeros(p)
    d = np.empty(n)
    hit_sum = np.empty(p)
    miss_sum = np.empty((n_classes, p))
    miss_found = np.empty(n_classes, dtype=np.int64)
    for si in range(m):
        i = sample_rows[si]
        yi = y[i]
        for j in range(n):
            acc = 0.0
            for f in range(p):
                df = abs(X[i, f] - X[j, f]) * scale[f]
                if euclidean:
                    acc += df * df
                else:
                    acc += df
            d[j] = acc
        d[i] = np.inf  # never neighbor of itself
        order = np.argsort(d, kind="mergesort")
        hit_sum[:] = 0.0
        miss_sum[:] = 0.0
        miss_found[:] = 0
        hits_found = 0
        for oj in range(n):
            j = order[oj]
            if d[j] == np.inf:
                break
            c = y[j]
            if c == yi:
                # a zero-distance hit is a copy of the instance (bootstrap
                # duplicate): it carries no neighbor information, so it
                # must not occupy one of the k hit slots
                if d[j] > 0.0 and hits_found < k:
                    hits_found += 1
                    for f in range(p):
                        df = abs(X[i, f] - X[j, f]) * scale[f]
                        if squared:
                            df *= df
                        hit_sum[f] += df
            elif miss_found[c] < k:
                miss_found[c] += 1
                for f in range(p):
                    df = abs(X[i, f] - X[j, f]) * scale[f]
                    if squared:
                        df *= df
                    miss_sum[c, f] += df
        if hits_found > 0:
            for f in range(p):
                w[f] -= hit_sum[f] / (m * hits_found)
        denom = 1.0 - priors[yi]
        if denom > 0.0:
            for c in range(n_classes):
                if c != yi and miss_found[c] > 0:
                    coef = priors[c] / denom
                    for f in range(p):
                        w[f] += coef * miss_sum[c, f] / (m * miss_found[c])
    return w


def relief_scan_numpy(X, y, n_classes, priors, k, sample_rows, scale,
                      squared, euclidean):
    """Vectorized Relief weight accumulation (one instance at a time)."""
    n, p = X.shape
    m = sample_rows.shape[0]
    w = np.zeros(p)
    for i in sample_rows:
        yi = y[i]
        diffs = np.abs(X - X[i]) * scale
        d = (diffs * diffs).sum(axis=1) if euclidean else diffs.sum(axis=1)
        d[i] = np.inf
        order = np.argsort(d, kind="mergesort")
        contrib = diffs * diffs if squared else diffs
        yo = y[order]
        # zero-distance hits are copies of the instance and carry no
        # neighbor information; they must not fill hit slots
        hit_rows = order[(yo == yi) & (d[order] > 0.0)][:k]
        if hit_rows.size:
            w -= contrib[hit_rows].sum(axis=0) / (m * hit_rows.size)
        denom = 1.0 - priors[yi]
        if denom > 0.0:
            for c in range(n_classes):
                if c == yi:
                    continue
                miss_rows = order[yo == c][:k]
                if miss_rows.size:
                    w += (priors[c] / denom) * contrib[miss_rows].sum(axis=0) \
                        / (m * miss_rows.size)
    return w


# ---------------------------------------------------------------------------
# k-nearest neighbors
# ---------------------------------------------------------------------------

def _knn_neighbors_loops(X_train, X_test, k):
    n_tr = X_train.shape[0]
    n_te = X_test.shape[0]
    p = X_train.shape[1]
    out = np.empty((n_te, k), dtype=np.int64)
    d = np.empty(n_tr)
    for t in range(n_te):
        for j in range(n_tr):
            acc = 0.0
            for f in range(p):
                df = X_test[t, f] - X_train[j, f]
                acc += df * df
            d[j] = acc
        order = np.argsort(d, kind="mergesort")
        for q in range(k):
            out[t, q] = order[q]
    return out


def knn_neighbors_numpy(X_train, X_test, k):
    """Indices of the k nearest train rows per test row.

    Squared Euclidean distance; exact distance ties resolve to the lower
    train-row index via the stable sort.
    """
    n_te = X_test.shape[0]
    out = np.empty((n_te, k), dtype=np.int64)
    for t in range(n_te):
        diff = X_train - X_test[t]
        d = (diff * diff).sum(axis=1)
        out[t] = np.argsort(d, kind="mergesort")[:k]
    return out


# ---------------------------------------------------------------------------
# Decision-tree split search (one feature, values pre-sorted ascending)
# ---------------------------------------------------------------------------

def _best_split_gini_loops(vals, codes, n_classes):
    n = vals.shape[0]
    total = np.zeros(n_classes, dtype=np.int64)
    for i in range(n):
        total[codes[i]] += 1
    parent = 1.0
    for c in range(n_classes):
        frac = total[c] / n
        parent -= frac * frac
    left = np.zeros(n_classes, dtype=np.int64)
    best_gain = -1.0
    best_thr = np.nan
    for i in range(n - 1):
        left[codes[i]] += 1
        if vals[i + 1] > vals[i]:
            nl = i + 1
            nr = n - nl
            gl = 1.0
            gr = 1.0
            for c in range(n_classes):
                fl = left[c] / nl
                fr = (total[c] - left[c]) / nr
                gl -= fl * fl
                gr -= fr * fr
            gain = parent - (nl * gl + nr * gr) / n
            if gain > best_gain:
                best_gain = gain
                best_thr = 0.5 * (vals[i] + vals[i + 1])
    return best_thr, best_gain


def best_split_gini_numpy(vals, codes, n_classes):
    n = vals.shape[0]
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), codes] = 1.0
    cum = np.cumsum(onehot, axis=0)
    total = cum[-1]
    parent = 1.0 - ((total / n) ** 2).sum()
    boundary = np.flatnonzero(vals[1:] > vals[:-1])
    if boundary.size == 0:
        return np.nan, -1.0
    nl = (boundary + 1).astype(np.float64)
    nr = n - nl
    lc = cum[boundary]
    rc = total - lc
    gl = 1.0 - ((lc / nl[:, None]) ** 2).sum(axis=1)
    gr = 1.0 - ((rc / nr[:, None]) ** 2).sum(axis=1)
    gains = parent - (nl * gl + nr * gr) / n
    b = int(np.argmax(gains))  # first max: lowest threshold wins ties
    i = boundary[b]
    return 0.5 * (vals[i] + vals[i + 1]), float(gains[b])


def _best_split_mse_loops(vals, y):
    n = vals.shape[0]
    total_sum = 0.0
    total_sq = 0.0
    for i in range(n):
        total_sum += y[i]
        total_sq += y[i] * y[i]
    parent = total_sq / n - (total_sum / n) ** 2
    if parent < 0.0:
        parent = 0.0
    left_sum = 0.0
    left_sq = 0.0
    best_gain = -1.0
    best_thr = np.nan
    for i in range(n - 1):
        left_sum += y[i]
        left_sq += y[i] * y[i]
        if vals[i + 1] > vals[i]:
            nl = i + 1
            nr = n - nl
            vl = left_sq / nl - (left_sum / nl) ** 2
            vr = (total_sq - left_sq) / nr - ((total_sum - left_sum) / nr) ** 2
            if vl < 0.0:
                vl = 0.0
            if vr < 0.0:
                vr = 0.0
            gain = parent - (nl * vl + nr * vr) / n
            if gain > best_gain:
                best_gain = gain
                best_thr = 0.5 * (vals[i] + vals[i + 1])
    return best_thr, best_gain


def best_split_mse_numpy(vals, y):
    n = vals.shape[0]
    csum = np.cumsum(y)
    csq = np.cumsum(y * y)
    parent = max(csq[-1] / n - (csum[-1] / n) ** 2, 0.0)
    boundary = np.flatnonzero(vals[1:] > vals[:-1])
    if boundary.size == 0:
        return np.nan, -1.0
    nl = (boundary + 1).astype(np.float64)
    nr = n - nl
    ls = csum[boundary]
    lq = csq[boundary]
    vl = np.maximum(lq / nl - (ls / nl) ** 2, 0.0)
    vr = np.maximum((csq[-1] - lq) / nr - ((csum[-1] - ls) / nr) ** 2, 0.0)
    gains = parent - (nl * vl + nr * vr) / n
    b = int(np.argmax(gains))
    i = boundary[b]
    return 0.5 * (vals[i] + vals[i + 1]), float(gains[b])


# ---------------------------------------------------------------------------
# Decision-tree prediction over flat node arrays
# ---------------------------------------------------------------------------

def _tree_predict_loops(feature, threshold, left, right, value, X):
    n = X.shape[0]
    out = np.empty(n)
    for i in range(n):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = value[node]
    return out


def tree_predict_numpy(feature, threshold, left, right, value, X):
    n = X.shape[0]
    node = np.zeros(n, dtype=np.int64)
    while True:
        f = feature[node]
        active = f >= 0
        if not active.any():
            break
        rows = np.flatnonzero(active)
        fa = f[rows]
        go_left = X[rows, fa] <= threshold[node[rows]]
        node[rows] = np.where(go_left, left[node[rows]], right[node[rows]])
    return value[node]


# ---------------------------------------------------------------------------
# Path selection
# ---------------------------------------------------------------------------

if NUMBA_AVAILABLE:
    relief_scan_numba = njit(cache=True)(_relief_scan_loops)
    knn_neighbors_numba = njit(cache=True)(_knn_neighbors_loops)
    best_split_gini_numba = njit(cache=True)(_best_split_gini_loops)
    best_split_mse_numba = njit(cache=True)(_best_split_mse_loops)
    tree_predict_numba = njit(cache=True)(_tree_predict_loops)
else:
    relief_scan_numba = None
    knn_neighbors_numba = None
    best_split_gini_numba = None
    best_split_mse_numba = None
    tree_predict_numba = None

if NUMBA_ENABLED:
    relief_scan = relief_scan_numba
    knn_neighbors = knn_neighbors_numba
    best_split_gini = best_split_gini_numba
    best_split_mse = best_split_mse_numba
    tree_predict = tree_predict_numba
else:
    relief_scan = relief_scan_numpy
    knn_neighbors = knn_neighbors_numpy
    best_split_gini = best_split_gini_numpy
    best_split_mse = best_split_mse_numpy
    tree_predict = tree_predict_numpy


def active_path() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
