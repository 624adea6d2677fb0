import numpy as np
import pytest

from rankbench.datagen import (
    Dataset,
    SynclfSpec,
    SynregSpec,
    make_classification,
    make_regression,
)
from rankbench.errors import SpecInvalidError

HARD = SynclfSpec(n_samples=10000, n_features=50, n_informative=4, n_classes=3,
                  n_clusters_per_class=3, class_sep=0.8, seed=0)


def test_synclf_hard_ground_truth_is_uniform_over_informative():
    ds = make_classification(HARD)
    expected = np.zeros(50)
    expected[:4] = 0.25
    assert np.allclose(ds.importances, expected)
    assert np.array_equal(ds.relevant, expected > 0)
    assert ds.X.shape == (10000, 50)
    assert set(np.unique(ds.y)) == {0, 1, 2}


def test_all_informative_means_all_relevant():
    spec = SynclfSpec(n_samples=50, n_features=4, n_informative=4,
                      n_classes=2, n_clusters_per_class=2, seed=1)
    ds = make_classification(spec)
    assert ds.relevant.all()


def test_classification_determinism():
    a = make_classification(HARD)
    b = make_classification(HARD)
    assert np.array_equal(a.X, b.X)
    assert np.array_equal(a.y, b.y)


def test_class_counts_balanced():
    ds = make_classification(HARD)
    counts = np.bincount(ds.y)
    assert counts.max() - counts.min() <= HARD.n_classes


def test_redundant_features_are_linear_combinations():
    spec = SynclfSpec(n_samples=200, n_features=10, n_informative=3,
                      n_redundant=2, n_classes=2, n_clusters_per_class=2, seed=5)
    ds = make_classification(spec)
    informative = ds.X[:, :3]
    for j in (3, 4):
        coef, residuals, *_ = np.linalg.lstsq(informative, ds.X[:, j], rcond=None)
        assert float(np.abs(ds.X[:, j] - informative @ coef).max()) < 1e-9
    # redundant features carry zero ground-truth weight
    assert np.allclose(ds.importances[3:], 0.0)


def test_repeated_features_are_exact_copies():
    spec = SynclfSpec(n_samples=100, n_features=8, n_informative=3,
                      n_redundant=1, n_repeated=2, n_classes=2,
                      n_clusters_per_class=2, seed=2)
    ds = make_classification(spec)
    repeated = ds.X[:, 4:6]
    sources = ds.X[:, :4]
    for j in range(2):
        assert any(np.array_equal(repeated[:, j], sources[:, s]) for s in range(4))


def test_noise_columns_uncorrelated_with_labels():
    ds = make_classification(SynclfSpec(n_samples=5000, n_features=6,
                                        n_informative=2, n_classes=2,
                                        n_clusters_per_class=2, class_sep=2.0,
                                        seed=3))
    # class-mean gap is large on informative columns, small on noise
    gap = np.abs(ds.X[ds.y == 0].mean(axis=0) - ds.X[ds.y == 1].mean(axis=0))
    assert gap[:2].min() > 5 * gap[2:].max()


def test_shuffle_permutes_columns_and_truth_together():
    base = SynclfSpec(n_samples=300, n_features=12, n_informative=4,
                      n_classes=2, n_clusters_per_class=2, seed=9)
    plain = make_classification(base)
    shuffled = make_classification(SynclfSpec(**{**base.__dict__, "shuffle": True}))
    assert not np.array_equal(plain.importances, shuffled.importances)
    # every original column appears somewhere, and relevance follows it
    for j in range(12):
        matches = [k for k in range(12)
                   if np.array_equal(shuffled.X[:, k], plain.X[:, j])]
        assert len(matches) == 1
        assert shuffled.importances[matches[0]] == plain.importances[j]


def test_synclf_spec_validation():
    with pytest.raises(SpecInvalidError):
        make_classification(SynclfSpec(n_samples=10, n_features=3, n_informative=2,
                                       n_redundant=2, n_classes=2,
                                       n_clusters_per_class=1))
    with pytest.raises(SpecInvalidError):
        # 2 classes * 4 clusters > 2^2 vertices
        make_classification(SynclfSpec(n_samples=10, n_features=5, n_informative=2,
                                       n_classes=2, n_clusters_per_class=4))


def test_synreg_zero_noise_single_informative():
    ds = make_regression(SynregSpec(n_samples=50, n_features=2, n_informative=1,
                                    noise_std=0.0, seed=0))
    assert np.allclose(ds.importances, [1.0, 0.0])
    ratio = ds.y / ds.X[:, 0]
    assert np.allclose(ratio, ratio[0])


def test_synreg_ols_recovers_ground_truth():
    noise = 1.0
    ds = make_regression(SynregSpec(n_samples=100, n_features=10, n_informative=5,
                                    noise_std=noise, seed=4))
    beta_hat, *_ = np.linalg.lstsq(ds.X, ds.y, rcond=None)
    w_hat = np.abs(beta_hat) / np.abs(beta_hat).sum()
    # per-coefficient OLS error is within 3 * noise / sqrt(n); normalized
    # comparison scales that bound by the coefficient total
    tol = 3 * noise / np.sqrt(100) / np.abs(beta_hat).sum() + 3e-3
    assert np.max(np.abs(w_hat - ds.importances)) < tol


def test_synreg_determinism_and_consistency():
    spec = SynregSpec(n_samples=60, n_features=5, n_informative=3,
                      noise_std=0.5, seed=11)
    a, b = make_regression(spec), make_regression(spec)
    assert np.array_equal(a.X, b.X) and np.array_equal(a.y, b.y)
    assert np.array_equal(a.relevant, a.importances > 0)
    assert a.relevant.sum() == 3


def test_synreg_validation():
    with pytest.raises(SpecInvalidError):
        make_regression(SynregSpec(n_samples=10, n_features=2, n_informative=3))
    with pytest.raises(SpecInvalidError):
        make_regression(SynregSpec(n_samples=10, n_features=2, n_informative=1,
                                   noise_std=-1.0))


def test_dataset_invariants():
    with pytest.raises(SpecInvalidError):
        Dataset(X=np.zeros((1, 2)), y=np.zeros(1), task="classification")
    with pytest.raises(SpecInvalidError):
        Dataset(X=np.zeros((3, 2)), y=np.zeros(2), task="classification")
    with pytest.raises(SpecInvalidError):
        Dataset(X=np.zeros((3, 2)), y=np.zeros(3), task="clustering")
    ds = Dataset(X=np.zeros((3, 2)), y=np.zeros(3), task="regression",
                 importances=np.array([0.6, 0.4]))
    assert np.array_equal(ds.relevant, [True, True])
