"""Numba and numpy kernel paths must agree on the same inputs."""

import os
import subprocess
import sys

import numpy as np
import pytest

from rankbench import kernels


def _relief_inputs(seed=0, n=60, p=6, n_classes=3):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, p))
    y = rng.integers(0, n_classes, size=n).astype(np.int64)
    priors = np.bincount(y, minlength=n_classes) / n
    spread = X.max(axis=0) - X.min(axis=0)
    scale = 1.0 / spread
    rows = np.arange(n, dtype=np.int64)
    return X, y, n_classes, priors, rows, scale


@pytest.mark.parametrize("squared,euclidean", [(False, False), (True, True)])
def test_relief_paths_agree(squared, euclidean):
    X, y, n_classes, priors, rows, scale = _relief_inputs()
    args = (X, y, n_classes, priors, 4, rows, scale, squared, euclidean)
    w_np = kernels.relief_scan_numpy(*args)
    if kernels.relief_scan_numba is not None:
        w_nb = kernels.relief_scan_numba(*args)
        assert np.allclose(w_nb, w_np, atol=1e-10)
    assert np.all(np.abs(w_np) <= 1.0 + 1e-12)


def test_relief_skips_duplicate_copies_in_hits():
    # duplicated rows must not occupy hit slots with zero-distance copies
    X, y, n_classes, priors, rows, scale = _relief_inputs(seed=1)
    X2 = np.vstack([X, X[:10]])
    y2 = np.concatenate([y, y[:10]])
    rows2 = np.arange(len(y2), dtype=np.int64)
    w = kernels.relief_scan_numpy(X2, y2, n_classes, priors, 3, rows2, scale,
                                  False, False)
    assert np.isfinite(w).all()


def test_knn_paths_agree_and_tiebreak():
    rng = np.random.default_rng(2)
    Xtr = rng.normal(size=(50, 4))
    Xte = rng.normal(size=(20, 4))
    nn_np = kernels.knn_neighbors_numpy(Xtr, Xte, 5)
    if kernels.knn_neighbors_numba is not None:
        nn_nb = kernels.knn_neighbors_numba(Xtr, Xte, 5)
        assert np.array_equal(nn_np, nn_nb)
    # duplicate train rows: exact distance tie resolves to the lower index
    Xtr2 = np.vstack([Xtr[0], Xtr[0], Xtr[0]])
    nn = kernels.knn_neighbors_numpy(Xtr2, Xtr[0][None, :], 3)
    assert np.array_equal(nn[0], [0, 1, 2])
    if kernels.knn_neighbors_numba is not None:
        nn = kernels.knn_neighbors_numba(Xtr2, Xtr[0][None, :], 3)
        assert np.array_equal(nn[0], [0, 1, 2])


def test_gini_split_paths_agree():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(5, 80))
        vals = np.sort(rng.normal(size=n))
        codes = rng.integers(0, 3, size=n).astype(np.int64)
        thr_np, gain_np = kernels.best_split_gini_numpy(vals, codes, 3)
        if kernels.best_split_gini_numba is not None:
            thr_nb, gain_nb = kernels.best_split_gini_numba(vals, codes, 3)
            assert gain_nb == pytest.approx(gain_np, abs=1e-12)
            if np.isfinite(thr_np):
                assert thr_nb == pytest.approx(thr_np, abs=1e-12)


def test_mse_split_paths_agree():
    rng = np.random.default_rng(4)
    for _ in range(20):
        n = int(rng.integers(5, 80))
        vals = np.sort(rng.normal(size=n))
        y = rng.normal(size=n)
        thr_np, gain_np = kernels.best_split_mse_numpy(vals, y)
        if kernels.best_split_mse_numba is not None:
            thr_nb, gain_nb = kernels.best_split_mse_numba(vals, y)
            assert gain_nb == pytest.approx(gain_np, abs=1e-12)
            if np.isfinite(thr_np):
                assert thr_nb == pytest.approx(thr_np, abs=1e-12)


def test_split_on_constant_feature_returns_no_gain():
    vals = np.ones(10)
    codes = np.array([0, 1] * 5, dtype=np.int64)
    thr, gain = kernels.best_split_gini_numpy(vals, codes, 2)
    assert gain < 0
    if kernels.best_split_gini_numba is not None:
        thr, gain = kernels.best_split_gini_numba(vals, codes, 2)
        assert gain < 0


def test_tree_predict_paths_agree():
    # tiny hand-built tree: x0 <= 0 -> left leaf 1.0, else x1 <= 1 -> 2.0 / 3.0
    feature = np.array([0, -1, 1, -1, -1], dtype=np.int64)
    threshold = np.array([0.0, 0.0, 1.0, 0.0, 0.0])
    left = np.array([1, -1, 3, -1, -1], dtype=np.int64)
    right = np.array([2, -1, 4, -1, -1], dtype=np.int64)
    value = np.array([0.0, 1.0, 0.0, 2.0, 3.0])
    X = np.array([[-1.0, 0.0], [0.5, 0.5], [0.5, 2.0]])
    out_np = kernels.tree_predict_numpy(feature, threshold, left, right, value, X)
    assert np.array_equal(out_np, [1.0, 2.0, 3.0])
    if kernels.tree_predict_numba is not None:
        out_nb = kernels.tree_predict_numba(feature, threshold, left, right, value, X)
        assert np.array_equal(out_nb, out_np)


def test_env_flag_selects_numpy_path():
    env = dict(os.environ, RANKBENCH_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from rankbench import kernels; print(kernels.active_path())"],
        env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_active_path_reports_configured_backend():
    expected = "numba" if kernels.NUMBA_ENABLED else "numpy"
    assert kernels.active_path() == expected
