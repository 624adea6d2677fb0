"""Ranker interface: capability declarations and the fit result type."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import TaskMismatchError


@dataclass(frozen=True)
class RankerCapabilities:
    supports_classification: bool = False
    supports_regression: bool = False
    estimates_importances: bool = False
    estimates_support: bool = False
    estimates_ranking: bool = False
    requires_nonnegative: bool = False

    def __post_init__(self):
        if not (self.supports_classification or self.supports_regression):
            raise ValueError("a ranker must support at least one task")
        if not (self.estimates_importances or self.estimates_support
                or self.estimates_ranking):
            raise ValueError("a ranker must produce at least one estimate kind")

    def supports(self, task: str) -> bool:
        if task == "classification":
            return self.supports_classification
        return self.supports_regression


@dataclass(frozen=True)
class FeatureRanking:
    """Result of one ranker fit: any subset of the three representations."""

    importances: Optional[np.ndarray] = None
    support: Optional[np.ndarray] = None
    ranking: Optional[np.ndarray] = None
    fit_time_seconds: float = 0.0

    def __post_init__(self):
        vectors = [v for v in (self.importances, self.support, self.ranking)
                   if v is not None]
        if not vectors:
            raise ValueError("a FeatureRanking needs at least one vector")
        lengths = {len(v) for v in vectors}
        if len(lengths) != 1:
            raise ValueError("all ranking vectors must have the same length")
        if self.fit_time_seconds < 0:
            raise ValueError("fit_time_seconds must be >= 0")

    @property
    def n_features(self) -> int:
        for v in (self.importances, self.support, self.ranking):
            if v is not None:
                return len(v)
        raise AssertionError("unreachable")


class Ranker:
    """Base class; subclasses set `name`, `capabilities` and implement fit."""

    name: str = ""
    capabilities: RankerCapabilities

    def fit(self, X, y, task: str) -> FeatureRanking:
        raise NotImplementedError

    def _check_task(self, task: str) -> None:
        if not self.capabilities.supports(task):
            raise TaskMismatchError(f"{self.name} does not support {task}")

    def __repr__(self):
        return f"{type(self).__name__}()"
