import numpy as np
import pytest

from rankbench.errors import InsufficientSamplesError, SpecInvalidError
from rankbench.sampling import (
    ResampleSpec,
    SplitSpec,
    bootstrap_mean,
    bootstrap_variance,
    derive_rng,
    resample,
    split,
)


def test_holdout_sizes():
    train, test = split(10, SplitSpec(method="holdout", test_fraction=0.2, seed=1))
    assert len(test) == 2 and len(train) == 8
    assert set(train) | set(test) == set(range(10))
    assert not set(train) & set(test)


def test_kfold_partitions():
    folds = [split(10, SplitSpec(method="kfold", n_splits=5, fold=f, seed=3))
             for f in range(5)]
    tests = [set(t) for _, t in folds]
    assert set().union(*tests) == set(range(10))
    for i in range(5):
        for j in range(i + 1, 5):
            assert not tests[i] & tests[j]
        assert len(tests[i]) == 2


def test_kfold_uneven_sizes_differ_by_at_most_one():
    sizes = [len(split(11, SplitSpec(method="kfold", n_splits=3, fold=f, seed=0))[1])
             for f in range(3)]
    assert max(sizes) - min(sizes) <= 1
    assert sum(sizes) == 11


def test_kfold_leave_one_out():
    for f in range(5):
        _, test = split(5, SplitSpec(method="kfold", n_splits=5, fold=f, seed=0))
        assert len(test) == 1


def test_split_determinism():
    a = split(100, SplitSpec(method="holdout", test_fraction=0.3, seed=9))
    b = split(100, SplitSpec(method="holdout", test_fraction=0.3, seed=9))
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
    c = split(100, SplitSpec(method="holdout", test_fraction=0.3, seed=10))
    assert not np.array_equal(a[1], c[1])


def test_split_spec_validation():
    with pytest.raises(SpecInvalidError):
        split(10, SplitSpec(method="holdout", test_fraction=1.5))
    with pytest.raises(SpecInvalidError):
        split(10, SplitSpec(method="kfold", n_splits=11))
    with pytest.raises(SpecInvalidError):
        split(10, SplitSpec(method="kfold", n_splits=5, fold=5))
    with pytest.raises(SpecInvalidError):
        split(10, SplitSpec(method="sorted"))


def test_bootstrap_distinct_fraction_matches_theory():
    # expected distinct fraction of a full-size bootstrap is 1 - 1/e
    indices = np.arange(1000)
    fractions = []
    for seed in range(100):
        out = resample(indices, ResampleSpec(method="bootstrap", seed=seed))
        assert len(out) == 1000
        fractions.append(len(np.unique(out)) / 1000)
    assert abs(np.mean(fractions) - (1 - np.exp(-1))) < 0.03


def test_shuffle_is_permutation():
    indices = np.arange(50)
    out = resample(indices, ResampleSpec(method="shuffle", seed=4))
    assert sorted(out) == list(range(50))


def test_resample_none_is_identity():
    indices = np.array([5, 3, 9])
    out = resample(indices, ResampleSpec(method="none", seed=1))
    assert np.array_equal(out, indices)


def test_resample_sample_size_rounds_up():
    indices = np.arange(10)
    out = resample(indices, ResampleSpec(method="bootstrap", sample_size=0.25, seed=0))
    assert len(out) == 3  # ceil(0.25 * 10)


def test_resample_determinism_and_seed_sensitivity():
    indices = np.arange(30)
    a = resample(indices, ResampleSpec(method="bootstrap", seed=7))
    b = resample(indices, ResampleSpec(method="bootstrap", seed=7))
    c = resample(indices, ResampleSpec(method="bootstrap", seed=8))
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_resample_validation():
    with pytest.raises(SpecInvalidError):
        resample(np.array([], dtype=int), ResampleSpec(method="bootstrap"))
    with pytest.raises(SpecInvalidError):
        resample(np.arange(3), ResampleSpec(method="bootstrap", sample_size=0.0))
    with pytest.raises(SpecInvalidError):
        resample(np.arange(3), ResampleSpec(method="jackknife"))


def test_bootstrap_mean_and_variance_hand_values():
    assert bootstrap_mean([1, 1, 1]) == 1.0
    assert bootstrap_variance([1, 1, 1]) == 0.0
    assert bootstrap_mean([0, 2]) == 1.0
    assert bootstrap_variance([0, 2]) == pytest.approx(2.0)
    assert bootstrap_mean([1, 2, 3, 4]) == 2.5
    assert bootstrap_variance([1, 2, 3, 4]) == pytest.approx(5.0 / 3.0)


def test_variance_needs_two_samples():
    with pytest.raises(InsufficientSamplesError):
        bootstrap_variance([1.0])
    with pytest.raises(InsufficientSamplesError):
        bootstrap_mean([])


def test_derive_rng_streams_are_independent_and_stable():
    a = derive_rng(0, "split").integers(0, 1 << 30, 5)
    b = derive_rng(0, "split").integers(0, 1 << 30, 5)
    c = derive_rng(0, "resample").integers(0, 1 << 30, 5)
    d = derive_rng(1, "split").integers(0, 1 << 30, 5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)
    assert not np.array_equal(derive_rng(0, "x", 1).integers(0, 99, 5),
                              derive_rng(0, "x", 2).integers(0, 99, 5))
