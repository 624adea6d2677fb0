"""Decision-tree ranker: impurity-decrease importances from a CART fit."""

from __future__ import annotations

from .. import core
from ..tree import fit_tree
from .base import FeatureRanking, Ranker, RankerCapabilities


class DecisionTreeRanker(Ranker):
    name = "decision_tree"
    capabilities = RankerCapabilities(supports_classification=True,
                                      supports_regression=True,
                                      estimates_importances=True)

    def fit(self, X, y, task: str = "classification") -> FeatureRanking:
        self._check_task(task)
        tree = fit_tree(X, y, task)
        raw = tree.feature_importances()
        return FeatureRanking(importances=core.normalize_importances(raw))
