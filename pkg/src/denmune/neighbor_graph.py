"""Exact K-nearest-neighbor graph and the mutual-neighbor sets derived from it.

Every point ``i`` gets an ordered *refer-to* list of its ``k`` nearest
neighbors (Euclidean distance, ties broken by ascending index, never itself).
From those lists follow the *referred-by* sets (who lists ``i``), the
in-degree ``|referred_by[i]|`` and the mutual nearest neighbors
``mnn[i] = refer_to[i] & referred_by[i]``.

Two exact search strategies are provided and produce identical output: a
chunked brute-force scan and a k-d tree (``scipy.spatial.cKDTree``) used only
to collect candidates. Both funnel through the same ranking routine, so the
final order is decided by one distance expression and one tie rule.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import InvalidInputError, InvalidParameterError

__all__ = [
    "PointSet",
    "NeighborGraph",
    "STRATEGIES",
    "build_neighbor_graph",
    "knn_order",
    "mutual_neighbors",
]

STRATEGIES = ("auto", "brute_force", "kd_tree")

# Relative slack on the candidate radius; the shared ranking removes any
# extra candidates it lets in.
_RADIUS_SLACK = 1e-9
# Upper bound on floats held by one brute-force distance block.
_BLOCK_FLOATS = 1 << 22


@dataclass(frozen=True)
class PointSet:
    """``N`` points in ``D``-dimensional Euclidean space.

    Parameters
    ----------
    coords : array-like of shape (N, D)
        Finite real coordinates.
    truth_labels : array-like of shape (N,), optional
        Ground-truth class labels as integers.
    """

    coords: np.ndarray
    truth_labels: Optional[np.ndarray] = None

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=np.float64)
        if coords.ndim == 1 and coords.size:
            coords = coords.reshape(-1, 1)
        if coords.ndim != 2 or coords.shape[0] == 0:
            raise InvalidInputError("point set is empty")
        if coords.shape[1] == 0:
            raise InvalidInputError("points must have at least one dimension")
        if not np.all(np.isfinite(coords)):
            bad = int(np.flatnonzero(~np.isfinite(coords).all(axis=1))[0])
            raise InvalidInputError(f"non-finite coordinate in point {bad}")
        coords = np.ascontiguousarray(coords)
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

        if self.truth_labels is not None:
            labels = np.asarray(self.truth_labels)
            if labels.shape != (coords.shape[0],):
                raise InvalidInputError(
                    f"{labels.shape[0] if labels.ndim else 0} truth labels "
                    f"for {coords.shape[0]} points"
                )
            labels = labels.astype(np.int64)
            labels.setflags(write=False)
            object.__setattr__(self, "truth_labels", labels)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def __len__(self):
        return self.n

    def subset(self, idx) -> "PointSet":
        idx = np.asarray(idx)
        truth = None if self.truth_labels is None else self.truth_labels[idx]
        return PointSet(self.coords[idx], truth)


def _as_coords(points) -> np.ndarray:
    if isinstance(points, PointSet):
        return points.coords
    return PointSet(points).coords


@dataclass(frozen=True, eq=False)
class NeighborGraph:
    """Read-only K-nearest-neighbor structure.

    Attributes
    ----------
    k : int
        Neighborhood size.
    refer_to : ndarray of shape (N, k)
        Row ``i`` holds the ``k`` nearest neighbors of ``i`` in ascending
        distance order.
    mnn_mask : ndarray of shape (N, k), bool
        ``mnn_mask[i, r]`` is true when ``refer_to[i, r]`` also lists ``i``.
    in_degree : ndarray of shape (N,)
        Number of points whose refer-to list contains ``i``.
    """

    k: int
    refer_to: np.ndarray
    mnn_mask: np.ndarray = field(repr=False)
    in_degree: np.ndarray = field(repr=False)

    @classmethod
    def from_refer_to(cls, refer_to) -> "NeighborGraph":
        """Derive in-degrees and mutual-neighbor flags from refer-to lists."""
        refer_to = np.ascontiguousarray(refer_to, dtype=np.int64)
        if refer_to.ndim != 2 or refer_to.shape[1] == 0:
            raise InvalidInputError("refer_to must be a non-empty (N, k) array")
        n, k = refer_to.shape
        rows = np.repeat(np.arange(n, dtype=np.int64), k)
        cols = refer_to.ravel()
        forward = np.sort(rows * n + cols)
        backward = cols * n + rows
        pos = np.searchsorted(forward, backward)
        pos[pos == forward.size] = 0
        mnn_mask = (forward[pos] == backward).reshape(n, k)
        in_degree = np.bincount(cols, minlength=n).astype(np.int64)
        for arr in (refer_to, mnn_mask, in_degree):
            arr.setflags(write=False)
        return cls(k=k, refer_to=refer_to, mnn_mask=mnn_mask, in_degree=in_degree)

    @property
    def n(self) -> int:
        return self.refer_to.shape[0]

    def __len__(self):
        return self.n

    @cached_property
    def mnn(self) -> tuple:
        """Per-point mutual-neighbor sets."""
        return tuple(
            frozenset(row[mask].tolist())
            for row, mask in zip(self.refer_to, self.mnn_mask)
        )

    @cached_property
    def mnn_size(self) -> np.ndarray:
        size = self.mnn_mask.sum(axis=1)
        size.setflags(write=False)
        return size

    @cached_property
    def referred_by(self) -> tuple:
        """Per-point sets of the points that list it among their neighbors."""
        n, k = self.refer_to.shape
        targets = self.refer_to.ravel()
        sources = np.repeat(np.arange(n), k)
        order = np.argsort(targets, kind="stable")
        bounds = np.searchsorted(targets[order], np.arange(n + 1))
        srcs = sources[order]
        return tuple(
            frozenset(srcs[bounds[i]:bounds[i + 1]].tolist()) for i in range(n)
        )

    def restrict(self, k: int) -> "NeighborGraph":
        """Graph for a smaller neighborhood, reusing this ranking.

        The neighbor order is a total order, so the first ``k`` columns are
        exactly the ``k``-nearest neighbors.
        """
        if not 1 <= k <= self.k:
            raise InvalidParameterError(f"k must be in [1, {self.k}], got {k}")
        if k == self.k:
            return self
        return NeighborGraph.from_refer_to(self.refer_to[:, :k])

    def dump(self) -> str:
        """Text form ``i: [j1,...,jk]``, one line per point, for diffing."""
        return "".join(
            f"{i}: [{','.join(map(str, row))}]\n"
            for i, row in enumerate(self.refer_to.tolist())
        )

    def __eq__(self, other):
        if not isinstance(other, NeighborGraph):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.refer_to, other.refer_to)

    __hash__ = None


def _check_k(n: int, k) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise InvalidParameterError(f"k must be an integer, got {k!r}")
    k = int(k)
    if k < 1:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    if k >= n:
        raise InvalidParameterError(f"k must be < N (k={k}, N={n})")
    return k


def _rank_candidates(coords: np.ndarray, i: int, cand: np.ndarray, k: int) -> np.ndarray:
    # single source of truth for ordering: squared distance, then index
    d2 = np.square(coords[cand] - coords[i]).sum(axis=1)
    return cand[np.lexsort((cand, d2))[:k]]


def _brute_force_block(coords: np.ndarray, rows: np.ndarray, k: int) -> np.ndarray:
    block = np.square(coords[None, :, :] - coords[rows, None, :]).sum(axis=2)
    block[np.arange(rows.size), rows] = np.inf
    kth = np.partition(block, k - 1, axis=1)[:, k - 1]
    out = np.empty((rows.size, k), dtype=np.int64)
    for r, i in enumerate(rows):
        limit = kth[r] * (1.0 + _RADIUS_SLACK)
        cand = np.flatnonzero(block[r] <= limit)
        out[r] = _rank_candidates(coords, int(i), cand, k)
    return out


def _knn_brute_force(coords: np.ndarray, k: int, n_jobs: int) -> np.ndarray:
    n, d = coords.shape
    rows_per_block = max(1, _BLOCK_FLOATS // max(1, n * d))
    blocks = [
        np.arange(start, min(n, start + rows_per_block))
        for start in range(0, n, rows_per_block)
    ]
    if n_jobs == 1 or len(blocks) == 1:
        parts = [_brute_force_block(coords, b, k) for b in blocks]
    else:
        workers = None if n_jobs < 0 else n_jobs
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _brute_force_block(coords, b, k), blocks))
    return np.vstack(parts)


def _knn_kd_tree(coords: np.ndarray, k: int, n_jobs: int) -> np.ndarray:
    n = coords.shape[0]
    tree = cKDTree(coords)
    dist, idx = tree.query(coords, k=k + 1, workers=n_jobs)
    dist = np.atleast_2d(dist)
    idx = np.atleast_2d(idx)
    # radius of the k-th non-self neighbor; with duplicates the point itself
    # may be absent from its own k+1 list
    self_hit = idx == np.arange(n)[:, None]
    has_self = self_hit.any(axis=1)
    radius = np.where(has_self, dist[:, k], dist[:, k - 1])
    radius = radius * (1.0 + _RADIUS_SLACK)
    balls = tree.query_ball_point(coords, radius, workers=n_jobs)
    out = np.empty((n, k), dtype=np.int64)
    for i, ball in enumerate(balls):
        cand = np.asarray(ball, dtype=np.int64)
        cand = cand[cand != i]
        out[i] = _rank_candidates(coords, i, cand, k)
    return out


def knn_order(points, k: int, strategy: str = "auto", n_jobs: int = 1) -> np.ndarray:
    """Exact ``k``-nearest-neighbor indices of every point, shape ``(N, k)``.

    Parameters
    ----------
    points : PointSet or array-like of shape (N, D)
    k : int
        Number of neighbors, ``1 <= k < N``.
    strategy : {"auto", "brute_force", "kd_tree"}
        ``auto`` picks the k-d tree for ``D <= 3`` and brute force otherwise.
    n_jobs : int
        Worker threads; ``-1`` uses every core.
    """
    coords = _as_coords(points)
    k = _check_k(coords.shape[0], k)
    if strategy not in STRATEGIES:
        raise InvalidParameterError(
            f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}"
        )
    if n_jobs == 0:
        raise InvalidParameterError("n_jobs must be positive or -1")
    if strategy == "auto":
        strategy = "kd_tree" if coords.shape[1] <= 3 else "brute_force"
    if strategy == "kd_tree":
        return _knn_kd_tree(coords, k, n_jobs)
    return _knn_brute_force(coords, k, n_jobs)


def build_neighbor_graph(points, k: int, strategy: str = "auto", n_jobs: int = 1) -> NeighborGraph:
    """Build the exact K-nearest-neighbor graph of ``points``.

    Raises
    ------
    InvalidParameterError
        If ``k`` is not in ``[1, N)`` or ``strategy`` is unknown.
    InvalidInputError
        If the point set is empty or holds a non-finite coordinate.
    """
    return NeighborGraph.from_refer_to(knn_order(points, k, strategy, n_jobs))


def mutual_neighbors(graph: NeighborGraph, i: int) -> set:
    """Mutual nearest neighbors of point ``i``."""
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 0 <= i < graph.n:
        raise InvalidParameterError(f"point index {i!r} out of range [0, {graph.n})")
    return set(graph.mnn[int(i)])


def graph_from_lists(refer_to: Sequence[Sequence[int]]) -> NeighborGraph:
    """Build a graph from hand-written neighbor lists (tests, debugging)."""
    return NeighborGraph.from_refer_to(np.asarray(refer_to, dtype=np.int64))
