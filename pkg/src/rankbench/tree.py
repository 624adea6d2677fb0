"""CART decision tree with impurity-decrease feature importances.

Gini impurity for classification, variance for regression. No depth
limit, minimum two samples to split, and deterministic tie-breaking:
equal-gain splits go to the lower feature index, then the lower
threshold. Nodes are stored as flat arrays so prediction is a simple
array walk (see kernels.tree_predict).
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import DegenerateDataError


class DecisionTree:
    """CART for either task; `task` is "classification" or "regression"."""

    def __init__(self, task: str = "classification"):
        self.task = task
        self.feature = None    # int64, -1 marks a leaf
        self.threshold = None
        self.left = None
        self.right = None
        self.value = None      # majority class code / mean target
        self.n_node = None
        self.gain = None       # impurity decrease at the node (unweighted)
        self.n_features_ = 0
        self.classes_ = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        n, p = X.shape
        self.n_features_ = p
        if self.task == "classification":
            self.classes_, codes = np.unique(np.asarray(y), return_inverse=True)
            target = codes.astype(np.int64)
            self._n_classes = len(self.classes_)
        else:
            target = np.asarray(y, dtype=np.float64)
            self._n_classes = 0

        feature, threshold, left, right, value, n_node, gain = [], [], [], [], [], [], []

        def leaf_value(t):
            if self.task == "classification":
                counts = np.bincount(t, minlength=self._n_classes)
                return float(np.argmax(counts))  # first max = smallest class code
            return float(t.mean())

        # iterative build; stack holds (node_slot, row_indices)
        stack = [(0, np.arange(n))]
        feature.append(0)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        value.append(0.0)
        n_node.append(n)
        gain.append(0.0)
        while stack:
            slot, idx = stack.pop()
            t = target[idx]
            best_f, best_thr, best_gain = self._best_split(X, idx, t)
            if best_f < 0:
                feature[slot] = -1
                value[slot] = leaf_value(t)
                continue
            mask = X[idx, best_f] <= best_thr
            li, ri = idx[mask], idx[~mask]
            feature[slot] = best_f
            threshold[slot] = best_thr
            gain[slot] = best_gain
            for child_idx, side in ((li, "left"), (ri, "right")):
                child_slot = len(feature)
                feature.append(0)
                threshold.append(0.0)
                left.append(-1)
                right.append(-1)
                value.append(0.0)
                n_node.append(len(child_idx))
                gain.append(0.0)
                if side == "left":
                    left[slot] = child_slot
                else:
                    right[slot] = child_slot
                stack.append((child_slot, child_idx))

        self.feature = np.asarray(feature, dtype=np.int64)
        self.threshold = np.asarray(threshold, dtype=np.float64)
        self.left = np.asarray(left, dtype=np.int64)
        self.right = np.asarray(right, dtype=np.int64)
        self.value = np.asarray(value, dtype=np.float64)
        self.n_node = np.asarray(n_node, dtype=np.int64)
        self.gain = np.asarray(gain, dtype=np.float64)
        self._n_root = n
        return self

    def _best_split(self, X, idx, t):
        """Scan all features; returns (feature, threshold, gain) or (-1, nan, -1)."""
        if idx.size < 2:
            return -1, np.nan, -1.0
        if self.task == "classification" and np.all(t == t[0]):
            return -1, np.nan, -1.0
        best_f, best_thr, best_gain = -1, np.nan, 0.0
        for f in range(self.n_features_):
            vals = X[idx, f]
            order = np.argsort(vals, kind="mergesort")
            sv = vals[order]
            if sv[0] == sv[-1]:
                continue
            if self.task == "classification":
                thr, g = kernels.best_split_gini(sv, t[order], self._n_classes)
            else:
                thr, g = kernels.best_split_mse(sv, t[order].astype(np.float64))
            if g > best_gain:  # strict: lower feature index wins ties
                best_f, best_thr, best_gain = f, thr, g
        if best_f < 0 or best_gain <= 0.0:
            return -1, np.nan, -1.0
        return best_f, best_thr, best_gain

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        raw = kernels.tree_predict(self.feature, self.threshold, self.left,
                                   self.right, self.value, X)
        if self.task == "classification":
            return self.classes_[raw.astype(np.int64)]
        return raw

    def feature_importances(self) -> np.ndarray:
        """Impurity-decrease importance per feature, not yet normalized.

        Each internal node contributes (n_node / n_root) * gain to the
        feature it splits on.
        """
        imp = np.zeros(self.n_features_)
        internal = self.feature >= 0
        np.add.at(imp, self.feature[internal],
                  (self.n_node[internal] / self._n_root) * self.gain[internal])
        return imp


def fit_tree(X, y, task: str) -> DecisionTree:
    X = np.asarray(X, dtype=np.float64)
    if X.shape[0] >= 2 and bool(np.all(X == X[0])):
        raise DegenerateDataError("all rows identical; no split possible")
    return DecisionTree(task=task).fit(X, y)
