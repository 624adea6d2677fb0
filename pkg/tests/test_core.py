import itertools

import numpy as np
import pytest

from rankbench import core
from rankbench.errors import AllZeroError, IndexOutOfRangeError


def test_normalize_basic_example():
    w = core.normalize_importances([1.0, 4.0, 0.0])
    assert np.allclose(w, [0.2, 0.8, 0.0], atol=1e-12)


def test_normalize_uniform():
    w = core.normalize_importances([1, 1, 1, 1])
    assert np.allclose(w, [0.25, 0.25, 0.25, 0.25])


def test_normalize_clips_negatives():
    w = core.normalize_importances([-1.0, 1.0, 3.0])
    assert np.allclose(w, [0.0, 0.25, 0.75])


def test_normalize_all_zero_raises():
    with pytest.raises(AllZeroError):
        core.normalize_importances([0.0, 0.0])
    with pytest.raises(AllZeroError):
        core.normalize_importances([-1.0, -2.0])


def test_normalize_sums_to_one_and_idempotent():
    rng = np.random.default_rng(3)
    for _ in range(50):
        raw = rng.normal(size=rng.integers(1, 12))
        if np.all(raw <= 0):
            continue
        w = core.normalize_importances(raw)
        assert abs(w.sum() - 1.0) <= 1e-9
        assert np.all(w >= 0)
        again = core.normalize_importances(w)
        assert np.allclose(again, w, atol=1e-12)


def test_normalize_preserves_order_of_positive_entries():
    raw = np.array([0.3, 5.0, 1.2, 0.01])
    w = core.normalize_importances(raw)
    assert np.array_equal(np.argsort(raw), np.argsort(w))


def test_threshold_support_examples():
    w = np.array([0.2, 0.8, 0.0])
    assert np.array_equal(core.threshold_support(w, 0.0), [True, True, False])
    assert np.array_equal(core.threshold_support(w, 1.0), [False, False, False])
    uniform = np.array([0.25, 0.25, 0.25, 0.25])
    assert core.threshold_support(uniform, 0.1).all()


def test_threshold_zero_selects_strictly_positive():
    rng = np.random.default_rng(8)
    for _ in range(20):
        w = rng.choice([0.0, 0.1, 0.5], size=6)
        assert np.array_equal(core.threshold_support(w, 0.0), w > 0)


def test_threshold_rejects_negative_epsilon():
    with pytest.raises(ValueError):
        core.threshold_support(np.array([0.5, 0.5]), -0.1)


def test_sparse_round_trip():
    s = np.array([True, True, False])
    assert core.to_sparse(s) == {0, 1}
    assert core.to_sparse(np.zeros(3, dtype=bool)) == set()
    assert np.array_equal(core.from_sparse({2}, 3), [False, False, True])
    rng = np.random.default_rng(5)
    for _ in range(30):
        mask = rng.random(rng.integers(1, 10)) < 0.4
        back = core.from_sparse(core.to_sparse(mask), mask.size)
        assert np.array_equal(back, mask)


def test_from_sparse_out_of_range():
    with pytest.raises(IndexOutOfRangeError):
        core.from_sparse({3}, 3)
    with pytest.raises(IndexOutOfRangeError):
        core.from_sparse({-1}, 3)


def test_rank_from_importances_worked_example():
    assert np.array_equal(core.rank_from_importances([0.2, 0.8, 0.0]), [2, 3, 1])


def test_rank_tie_breaks_toward_lower_index():
    assert np.array_equal(core.rank_from_importances([0.5, 0.5]), [2, 1])
    assert np.array_equal(core.rank_from_importances([1.0]), [1])


def test_rank_round_trip_over_all_permutations():
    # normalizing a rank vector and re-ranking it must reproduce it
    for p in range(1, 7):
        for perm in itertools.permutations(range(1, p + 1)):
            r = np.array(perm)
            w = core.normalize_importances(r.astype(float))
            assert np.array_equal(core.rank_from_importances(w), r)


def test_rank_is_permutation_property():
    rng = np.random.default_rng(11)
    for _ in range(40):
        w = rng.random(rng.integers(1, 15))
        r = core.rank_from_importances(w)
        assert np.array_equal(np.sort(r), np.arange(1, w.size + 1))
        # higher importance -> higher rank
        for i in range(w.size):
            for j in range(w.size):
                if w[i] > w[j]:
                    assert r[i] > r[j]


def test_order_helpers_agree():
    w = np.array([0.1, 0.4, 0.4, 0.1])
    order = core.order_from_importances(w)
    assert np.array_equal(order, [1, 2, 0, 3])
    r = core.rank_from_importances(w)
    assert np.array_equal(core.order_from_ranking(r), order)


def test_validate_rank_vector():
    assert np.array_equal(core.validate_rank_vector([2, 3, 1]), [2, 3, 1])
    with pytest.raises(ValueError):
        core.validate_rank_vector([1, 1, 3])
