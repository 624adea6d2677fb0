"""Significance tests for comparing rankers across datasets.

Wilcoxon signed ranks for two methods, Friedman plus the Nemenyi
critical difference for several. Scores enter as a table with one row
per dataset and one column per method.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincc, ndtr

from .errors import AllZeroDifferencesError, DegenerateTableError, UnsupportedKError


@dataclass(frozen=True)
class ScoreTable:
    datasets: list[str]
    rankers: list[str]
    values: np.ndarray  # shape (n_datasets, n_rankers)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (len(self.datasets), len(self.rankers)):
            raise ValueError("values shape does not match the row/column labels")
        object.__setattr__(self, "values", v)


def _rank_with_ties(values: np.ndarray) -> np.ndarray:
    """Ascending ranks 1..k, ties averaged (rank 1 = smallest value)."""
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(len(values))
    sv = values[order]
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and sv[j + 1] == sv[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _exact_wilcoxon_p(ranks: np.ndarray, w_obs: float) -> float:
    """Two-sided exact p by enumerating sign assignments.

    Ranks may be half-integers (averaged ties), so sums are tracked in
    doubled units. p = 2 * P(R+ <= W), capped at 1.
    """
    doubled = np.round(ranks * 2).astype(np.int64)
    total = int(doubled.sum())
    # distribution of the doubled positive-rank sum under random signs
    counts = np.zeros(total + 1)
    counts[0] = 1.0
    for d in doubled:
        shifted = np.zeros_like(counts)
        shifted[d:] = counts[:counts.size - d]
        counts = counts + shifted
    threshold = int(np.floor(round(w_obs * 2, 8)))
    p = 2.0 * counts[:threshold + 1].sum() / counts.sum()
    return min(p, 1.0)


def wilcoxon_signed_rank(a, b) -> tuple[float, float]:
    """Wilcoxon signed-rank test for paired scores.

    Returns (W, p) where W = min(R+, R-) over ranks of the absolute
    differences. Zero differences are dropped. Exact p for up to 20
    non-zero pairs, normal approximation with continuity correction
    beyond that.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError("paired score vectors must have equal length")
    d = a - b
    d = d[d != 0.0]
    if d.size == 0:
        raise AllZeroDifferencesError("all paired differences are zero")
    n = d.size
    ranks = _rank_with_ties(np.abs(d))
    r_plus = float(ranks[d > 0].sum())
    r_minus = float(ranks[d < 0].sum())
    w = min(r_plus, r_minus)
    if n <= 20:
        return w, _exact_wilcoxon_p(ranks, w)
    mu = n * (n + 1) / 4.0
    sigma = np.sqrt(n * (n + 1) * (2 * n + 1) / 24.0)
    z = (w - mu + 0.5) / sigma
    return w, min(1.0, 2.0 * float(ndtr(z)))


def _chi2_sf(x: float, df: int) -> float:
    return float(gammaincc(df / 2.0, x / 2.0))


def friedman(table: ScoreTable) -> tuple[float, float, np.ndarray]:
    """Friedman test over a (datasets x rankers) score table.

    Scores are ranked within each dataset, 1 = worst, so a higher average
    rank means a better method. Returns (chi2_F, p, average ranks). An
    all-tied table is a valid input and yields chi2_F = 0.
    """
    N, k = table.values.shape
    if N < 2 or k < 2:
        raise DegenerateTableError("need at least 2 datasets and 2 rankers")
    ranks = np.vstack([_rank_with_ties(row) for row in table.values])
    avg = ranks.mean(axis=0)
    chi2 = (12.0 * N / (k * (k + 1))) * float((avg ** 2).sum() - k * (k + 1) ** 2 / 4.0)
    chi2 = max(chi2, 0.0)
    return chi2, _chi2_sf(chi2, k - 1), avg


# Critical values for the two-tailed Nemenyi test (infinite degrees of
# freedom, alpha = 0.05 / 0.10), k = 2..10. Source: J. Demsar,
# "Statistical Comparisons of Classifiers over Multiple Data Sets",
# JMLR 7 (2006), Table 5(a).
_NEMENYI_Q = {
    0.05: [1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164],
    0.10: [1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920],
}


def nemenyi_cd(k: int, n_datasets: int, alpha: float = 0.05) -> float:
    """Critical difference in average rank for the Nemenyi post-hoc test."""
    if alpha not in _NEMENYI_Q:
        raise ValueError("alpha must be 0.05 or 0.10")
    if not 2 <= k <= 10:
        raise UnsupportedKError("critical values tabulated for 2 <= k <= 10")
    if n_datasets < 1:
        raise ValueError("need at least one dataset")
    q = _NEMENYI_Q[alpha][k - 2]
    return q * float(np.sqrt(k * (k + 1) / (6.0 * n_datasets)))
