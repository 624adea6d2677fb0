"""Built-in feature rankers and the name registry used by config files."""

from __future__ import annotations

from ..errors import ConfigError
from .base import FeatureRanking, Ranker, RankerCapabilities
from .info import MutualInfoRanker, SymmetricalUncertaintyRanker
from .linear import LassoRanker, RidgeRanker
from .relief import ReliefFRanker, ReliefRanker
from .treeranker import DecisionTreeRanker
from .univariate import AnovaFRanker, Chi2Ranker

_REGISTRY: dict[str, type[Ranker]] = {}


def register_ranker(cls: type[Ranker]) -> type[Ranker]:
    if not cls.name:
        raise ValueError("ranker class needs a non-empty name")
    _REGISTRY[cls.name] = cls
    return cls


for _cls in (AnovaFRanker, Chi2Ranker, MutualInfoRanker,
             SymmetricalUncertaintyRanker, ReliefRanker, ReliefFRanker,
             DecisionTreeRanker, RidgeRanker, LassoRanker):
    register_ranker(_cls)


def available_rankers() -> list[str]:
    return sorted(_REGISTRY)


def get_ranker(name: str, params: dict | None = None) -> Ranker:
    try:
        cls = _REGISTRY[name]
    except KeyError:
        raise ConfigError(f"unknown ranker {name!r}; known: {available_rankers()}") from None
    try:
        return cls(**(params or {}))
    except TypeError as exc:
        raise ConfigError(f"bad params for ranker {name!r}: {exc}") from None


__all__ = [
    "FeatureRanking",
    "Ranker",
    "RankerCapabilities",
    "available_rankers",
    "get_ranker",
    "register_ranker",
    "AnovaFRanker",
    "Chi2Ranker",
    "MutualInfoRanker",
    "SymmetricalUncertaintyRanker",
    "ReliefRanker",
    "ReliefFRanker",
    "DecisionTreeRanker",
    "RidgeRanker",
    "LassoRanker",
]
