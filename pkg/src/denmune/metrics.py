"""External cluster-validity indices computed from a contingency table.

Predicted labels below zero are noise (``-1`` noise-1, ``-2`` noise-2). The
noise policy decides how they enter the table: ``noise_as_singletons`` gives
every noise point its own predicted cluster, ``exclude_noise`` drops those
points from both labelings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.special import comb

from .errors import EmptyTableError, InvalidInputError, InvalidParameterError

__all__ = [
    "NOISE_POLICIES",
    "ContingencyTable",
    "MetricsReport",
    "contingency",
    "ari",
    "nmi",
    "homogeneity_completeness",
    "f1_matched",
    "evaluate",
]

NOISE_POLICIES = ("noise_as_singletons", "exclude_noise")


@dataclass(frozen=True)
class ContingencyTable:
    """``counts[u, v]`` = points with predicted cluster ``u`` and true class ``v``."""

    counts: np.ndarray

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    def transpose(self) -> "ContingencyTable":
        return ContingencyTable(self.counts.T.copy())


@dataclass(frozen=True)
class MetricsReport:
    f1: float
    nmi: float
    ari: float
    homogeneity: float
    completeness: float
    noise_policy: str = "noise_as_singletons"

    FIELDS = ("f1", "nmi", "ari", "homogeneity", "completeness")

    def as_row(self) -> tuple:
        return tuple(getattr(self, f) for f in self.FIELDS)


def _dense(labels):
    _, inverse = np.unique(labels, return_inverse=True)
    return inverse.ravel()


def contingency(pred, truth, policy: str = "noise_as_singletons") -> ContingencyTable:
    """Cross-tabulate predicted against true labels under a noise policy."""
    if policy not in NOISE_POLICIES:
        raise InvalidParameterError(
            f"unknown noise policy {policy!r}; expected one of {', '.join(NOISE_POLICIES)}"
        )
    pred = np.asarray(pred).ravel()
    truth = np.asarray(truth).ravel()
    if pred.shape != truth.shape:
        raise InvalidInputError(
            f"label length mismatch: {pred.size} predicted vs {truth.size} true"
        )
    if pred.size == 0:
        raise InvalidInputError("empty labelings")

    pred = pred.astype(np.int64)
    noise = pred < 0
    if policy == "exclude_noise":
        pred, truth = pred[~noise], truth[~noise]
        if pred.size == 0:
            raise EmptyTableError("every point is noise; nothing left to compare")
    elif noise.any():
        pred = pred.copy()
        top = pred.max(initial=-1) + 1
        pred[noise] = top + np.arange(np.count_nonzero(noise))

    rows, cols = _dense(pred), _dense(truth)
    counts = np.zeros((rows.max() + 1, cols.max() + 1), dtype=np.int64)
    np.add.at(counts, (rows, cols), 1)
    return ContingencyTable(counts)


def _pairs(x):
    return comb(x, 2, exact=False)


def ari(table: ContingencyTable) -> float:
    """Adjusted Rand index (pair counting, corrected for chance)."""
    n = table.n
    index = _pairs(table.counts).sum()
    sum_rows = _pairs(table.row_sums).sum()
    sum_cols = _pairs(table.col_sums).sum()
    total = _pairs(n)
    if total == 0:
        return 1.0
    expected = sum_rows * sum_cols / total
    maximum = 0.5 * (sum_rows + sum_cols)
    if maximum == expected:
        return 1.0
    return float((index - expected) / (maximum - expected))


def _entropy(sizes, n):
    p = sizes[sizes > 0] / n
    return float(-(p * np.log(p)).sum())


def _mutual_info(table: ContingencyTable) -> float:
    n = table.n
    counts = table.counts
    u, v = np.nonzero(counts)
    nuv = counts[u, v].astype(np.float64)
    a = table.row_sums[u].astype(np.float64)
    b = table.col_sums[v].astype(np.float64)
    mi = (nuv / n * (np.log(nuv) + np.log(n) - np.log(a) - np.log(b))).sum()
    return max(float(mi), 0.0)


def nmi(table: ContingencyTable, norm: str = "arithmetic") -> float:
    """Mutual information normalized by the mean of the two entropies.

    Two single-block partitions are identical and score 1; a single block
    on one side only scores 0.
    """
    if norm not in ("arithmetic", "geometric"):
        raise InvalidParameterError(f"unknown normalization {norm!r}")
    h_pred = _entropy(table.row_sums, table.n)
    h_true = _entropy(table.col_sums, table.n)
    if h_pred == 0 and h_true == 0:
        return 1.0
    if h_pred == 0 or h_true == 0:
        return 0.0
    mi = _mutual_info(table)
    denom = 0.5 * (h_pred + h_true) if norm == "arithmetic" else np.sqrt(h_pred * h_true)
    return float(min(mi / denom, 1.0))


def _conditional_entropy(table: ContingencyTable, given_rows: bool) -> float:
    counts = table.counts
    u, v = np.nonzero(counts)
    nuv = counts[u, v].astype(np.float64)
    given = table.row_sums[u] if given_rows else table.col_sums[v]
    return float(-(nuv / table.n * np.log(nuv / given)).sum())


def homogeneity_completeness(table: ContingencyTable) -> tuple:
    """``(homogeneity, completeness)`` of the predicted clusters.

    Homogeneity is ``1 - H(truth | pred) / H(truth)``, completeness
    ``1 - H(pred | truth) / H(pred)``; a zero-entropy side scores 1.
    """
    h_pred = _entropy(table.row_sums, table.n)
    h_true = _entropy(table.col_sums, table.n)
    homogeneity = 1.0 if h_true == 0 else 1.0 - _conditional_entropy(table, True) / h_true
    completeness = 1.0 if h_pred == 0 else 1.0 - _conditional_entropy(table, False) / h_pred
    return min(max(homogeneity, 0.0), 1.0), min(max(completeness, 0.0), 1.0)


def _greedy_matching(counts):
    order = np.lexsort((np.indices(counts.shape)[1].ravel(),
                        np.indices(counts.shape)[0].ravel(),
                        -counts.ravel()))
    used_rows, used_cols, rows, cols = set(), set(), [], []
    n_cols = counts.shape[1]
    for flat in order:
        u, v = divmod(int(flat), n_cols)
        if counts[u, v] == 0:
            break
        if u in used_rows or v in used_cols:
            continue
        used_rows.add(u)
        used_cols.add(v)
        rows.append(u)
        cols.append(v)
    return np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64)


def f1_matched(table: ContingencyTable, matching: str = "hungarian") -> float:
    """Micro-averaged F1 after one-to-one matching of clusters to classes.

    A point counts as correct when its cluster is matched to its class.
    Every point carries exactly one prediction (points of unmatched clusters
    are simply wrong), so micro precision and recall coincide and F1 is the
    matched overlap over ``N``.
    """
    counts = table.counts
    if matching == "hungarian":
        rows, cols = linear_sum_assignment(counts, maximize=True)
    elif matching == "greedy_majority":
        rows, cols = _greedy_matching(counts)
    else:
        raise InvalidParameterError(f"unknown matching {matching!r}")
    return float(counts[rows, cols].sum() / table.n)


def evaluate(pred, truth, policy: str = "noise_as_singletons",
             norm: str = "arithmetic", matching: str = "hungarian") -> MetricsReport:
    """All five indices for one predicted labeling."""
    table = contingency(pred, truth, policy)
    h, c = homogeneity_completeness(table)
    return MetricsReport(
        f1=f1_matched(table, matching),
        nmi=nmi(table, norm),
        ari=ari(table),
        homogeneity=h,
        completeness=c,
        noise_policy=policy,
    )
