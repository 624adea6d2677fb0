"""Cross-validation splitting and bootstrap/shuffle resampling.

Every random draw flows through `derive_rng`, which builds an independent
counter-based stream from (seed, purpose tag, indices). Consumers that
tag their streams cannot perturb each other, so e.g. adding a ranker
never changes how a dataset is resampled.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientSamplesError, SpecInvalidError


def derive_rng(seed: int, purpose: str, *indices: int) -> np.random.Generator:
    """Independent PCG64 stream keyed by (seed, purpose, indices)."""
    tag = zlib.crc32(purpose.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence([int(seed), tag, *map(int, indices)]))


@dataclass(frozen=True)
class SplitSpec:
    """Holdout or k-fold split description.

    holdout uses `test_fraction`; kfold uses `n_splits`, `fold` and
    `shuffle`. `seed` drives the permutation in both cases.
    """

    method: str = "holdout"
    test_fraction: float = 0.2
    n_splits: int = 5
    fold: int = 0
    shuffle: bool = True
    seed: int = 0

    def validate(self, n: int) -> None:
        if self.method == "holdout":
            if not 0.0 < self.test_fraction < 1.0:
                raise SpecInvalidError("holdout test_fraction must be in (0, 1)")
        elif self.method == "kfold":
            if not 2 <= self.n_splits <= n:
                raise SpecInvalidError(f"kfold n_splits must be in [2, {n}]")
            if not 0 <= self.fold < self.n_splits:
                raise SpecInvalidError("fold index out of range")
        else:
            raise SpecInvalidError(f"unknown split method {self.method!r}")


def split(n: int, spec: SplitSpec) -> tuple[np.ndarray, np.ndarray]:
    """Return disjoint (train, test) index arrays covering range(n)."""
    spec.validate(n)
    if spec.method == "holdout":
        n_test = int(round(spec.test_fraction * n))
        n_test = min(max(n_test, 1), n - 1)
        perm = derive_rng(spec.seed, "split").permutation(n)
        test = np.sort(perm[:n_test])
        train = np.sort(perm[n_test:])
        return train, test
    # kfold: permute once, then slice contiguous folds whose sizes differ
    # by at most one (the first n % n_splits folds get the extra sample).
    if spec.shuffle:
        order = derive_rng(spec.seed, "split").permutation(n)
    else:
        order = np.arange(n)
    sizes = np.full(spec.n_splits, n // spec.n_splits, dtype=np.int64)
    sizes[: n % spec.n_splits] += 1
    offsets = np.concatenate(([0], np.cumsum(sizes)))
    lo, hi = offsets[spec.fold], offsets[spec.fold + 1]
    test = np.sort(order[lo:hi])
    train = np.sort(np.concatenate([order[:lo], order[hi:]]))
    return train, test


@dataclass(frozen=True)
class ResampleSpec:
    """Bootstrap (with replacement), shuffle (without), or pass-through."""

    method: str = "bootstrap"
    sample_size: float = 1.0
    seed: int = 0

    def validate(self) -> None:
        if self.method not in ("bootstrap", "shuffle", "none"):
            raise SpecInvalidError(f"unknown resample method {self.method!r}")
        if not 0.0 < self.sample_size <= 1.0:
            raise SpecInvalidError("sample_size must be in (0, 1]")


def resample(indices, spec: ResampleSpec) -> np.ndarray:
    """Resample an index array; output size is ceil(sample_size * len)."""
    spec.validate()
    indices = np.asarray(indices, dtype=np.int64)
    if indices.size == 0:
        raise SpecInvalidError("cannot resample an empty index set")
    if spec.method == "none":
        return indices.copy()
    m = int(np.ceil(spec.sample_size * indices.size))
    rng = derive_rng(spec.seed, "resample")
    if spec.method == "bootstrap":
        draws = rng.integers(0, indices.size, size=m)
        return indices[draws]
    return rng.permutation(indices)[:m]


def bootstrap_mean(values) -> float:
    """Arithmetic mean of a per-bootstrap statistic."""
    values = np.asarray(values, dtype=np.float64)
    if values.size < 1:
        raise InsufficientSamplesError("mean needs at least one value")
    return float(values.mean())


def bootstrap_variance(values) -> float:
    """Unbiased sample variance (divides by B - 1)."""
    values = np.asarray(values, dtype=np.float64)
    if values.size < 2:
        raise InsufficientSamplesError("variance needs at least two values")
    return float(values.var(ddof=1))
