"""Synthetic dataset generation with known ground-truth importances.

Classification data places Gaussian clusters on hypercube vertices inside
the informative subspace; regression data is linear with positive random
coefficients. Both record the true importance vector so rankings can be
scored directly, without a validation estimator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import core
from .errors import SpecInvalidError
from .sampling import derive_rng

CLASSIFICATION = "classification"
REGRESSION = "regression"


@dataclass
class Dataset:
    X: np.ndarray
    y: np.ndarray
    task: str
    name: str = "dataset"
    importances: Optional[np.ndarray] = None  # ground-truth w, sums to 1
    relevant: Optional[np.ndarray] = None     # ground-truth mask s = (w > 0)

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=np.float64)
        n, p = self.X.shape
        if n < 2 or p < 1:
            raise SpecInvalidError("dataset needs n >= 2 and p >= 1")
        if len(self.y) != n:
            raise SpecInvalidError("y length must equal the number of rows")
        if self.task not in (CLASSIFICATION, REGRESSION):
            raise SpecInvalidError(f"unknown task {self.task!r}")
        if self.importances is not None:
            self.importances = np.asarray(self.importances, dtype=np.float64)
            if self.importances.size != p:
                raise SpecInvalidError("ground-truth importances must have length p")
            self.relevant = self.importances > 0.0
        if self.relevant is not None:
            self.relevant = np.asarray(self.relevant, dtype=bool)

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    @property
    def has_ground_truth(self) -> bool:
        return self.importances is not None


@dataclass(frozen=True)
class SynclfSpec:
    n_samples: int
    n_features: int
    n_informative: int
    n_redundant: int = 0
    n_repeated: int = 0
    n_classes: int = 2
    n_clusters_per_class: int = 2
    class_sep: float = 1.0
    shuffle: bool = False
    seed: int = 0
    name: str = field(default="synclf", compare=False)

    def validate(self) -> None:
        if self.n_samples < 2 or self.n_features < 1 or self.n_informative < 1:
            raise SpecInvalidError("need n_samples >= 2, n_features >= 1, n_informative >= 1")
        if self.n_informative + self.n_redundant + self.n_repeated > self.n_features:
            raise SpecInvalidError("informative + redundant + repeated exceeds n_features")
        if self.n_classes < 2 or self.n_clusters_per_class < 1:
            raise SpecInvalidError("need n_classes >= 2 and n_clusters_per_class >= 1")
        if self.n_classes * self.n_clusters_per_class > 2 ** self.n_informative:
            raise SpecInvalidError("more clusters than hypercube vertices: "
                                   "n_classes * n_clusters_per_class must be <= 2^n_informative")


@dataclass(frozen=True)
class SynregSpec:
    n_samples: int
    n_features: int
    n_informative: int
    noise_std: float = 0.0
    seed: int = 0
    name: str = field(default="synreg", compare=False)

    def validate(self) -> None:
        if self.n_samples < 2 or self.n_features < 1 or self.n_informative < 1:
            raise SpecInvalidError("need n_samples >= 2, n_features >= 1, n_informative >= 1")
        if self.n_informative > self.n_features:
            raise SpecInvalidError("n_informative exceeds n_features")
        if self.noise_std < 0.0:
            raise SpecInvalidError("noise_std must be >= 0")


def _hypercube_vertices(n_vertices: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """Pick distinct vertices of the {0,1}^dim hypercube, as bit rows."""
    if dim <= 20:
        codes = rng.choice(2 ** dim, size=n_vertices, replace=False)
    else:
        seen: set[int] = set()
        codes = []
        while len(codes) < n_vertices:
            c = int(rng.integers(0, 2 ** dim))
            if c not in seen:
                seen.add(c)
                codes.append(c)
        codes = np.asarray(codes)
    bits = (np.asarray(codes)[:, None] >> np.arange(dim)[None, :]) & 1
    return bits.astype(np.float64)


def make_classification(spec: SynclfSpec) -> Dataset:
    """Gaussian clusters on hypercube vertices; half-side = class_sep.

    Column layout with shuffle=False: informative, redundant (random
    linear mixes of informative), repeated (exact copies), then pure
    noise. Ground truth is uniform over the informative columns.
    """
    spec.validate()
    rng = derive_rng(spec.seed, "synclf")
    n, p = spec.n_samples, spec.n_features
    n_inf, n_red, n_rep = spec.n_informative, spec.n_redundant, spec.n_repeated
    n_clusters = spec.n_classes * spec.n_clusters_per_class

    vertices = _hypercube_vertices(n_clusters, n_inf, rng)
    centroids = vertices * (2.0 * spec.class_sep) - spec.class_sep

    # cluster c belongs to class c % n_classes; remainder samples go to the
    # first clusters, keeping class counts within 1 of each other
    counts = np.full(n_clusters, n // n_clusters, dtype=np.int64)
    counts[: n % n_clusters] += 1

    X = np.empty((n, p))
    y = np.empty(n, dtype=np.int64)
    row = 0
    for c in range(n_clusters):
        m = int(counts[c])
        if m == 0:
            continue
        X[row:row + m, :n_inf] = rng.standard_normal((m, n_inf)) + centroids[c]
        y[row:row + m] = c % spec.n_classes
        row += m

    col = n_inf
    if n_red:
        mix = rng.uniform(-1.0, 1.0, size=(n_inf, n_red))
        X[:, col:col + n_red] = X[:, :n_inf] @ mix
        col += n_red
    if n_rep:
        sources = rng.integers(0, n_inf + n_red, size=n_rep)
        X[:, col:col + n_rep] = X[:, sources]
        col += n_rep
    if col < p:
        X[:, col:] = rng.standard_normal((n, p - col))

    w = np.zeros(p)
    w[:n_inf] = 1.0 / n_inf

    if spec.shuffle:
        perm = rng.permutation(p)
        X = X[:, perm]
        w = w[perm]

    return Dataset(X=X, y=y, task=CLASSIFICATION, name=spec.name, importances=w)


def make_regression(spec: SynregSpec) -> Dataset:
    """Linear target y = X @ beta + noise, beta uniform on (0, 100].

    Ground truth is normalize(|beta|), i.e. the exact relative weighting
    of the informative columns.
    """
    spec.validate()
    rng = derive_rng(spec.seed, "synreg")
    n, p = spec.n_samples, spec.n_features
    X = rng.standard_normal((n, p))
    beta = np.zeros(p)
    # 1 - random() lands in (0, 1], keeping coefficients strictly positive
    beta[: spec.n_informative] = 100.0 * (1.0 - rng.random(spec.n_informative))
    y = X @ beta + spec.noise_std * rng.standard_normal(n)
    w = core.normalize_importances(np.abs(beta))
    return Dataset(X=X, y=y, task=REGRESSION, name=spec.name, importances=w)
