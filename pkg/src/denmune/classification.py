"""Strong / weak / noise-1 partition of points and their canonical order."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .neighbor_graph import NeighborGraph

__all__ = ["PointType", "PointClassification", "classify_points", "canonical_order"]


class PointType(IntEnum):
    STRONG = 0
    WEAK = 1
    NOISE1 = 2


@dataclass(frozen=True, eq=False)
class PointClassification:
    """Point types plus the processing order used by both clustering phases.

    ``seed_order`` and ``weak_order`` list strong and weak points by
    descending in-degree, equal in-degrees by ascending index.
    """

    k: int
    point_type: np.ndarray
    ratio: np.ndarray
    seed_order: np.ndarray
    weak_order: np.ndarray

    @property
    def n(self) -> int:
        return self.point_type.shape[0]

    @property
    def noise1(self) -> np.ndarray:
        return np.flatnonzero(self.point_type == PointType.NOISE1)

    @property
    def n_strong(self) -> int:
        return int(self.seed_order.size)

    @property
    def n_weak(self) -> int:
        return int(self.weak_order.size)

    @property
    def n_noise1(self) -> int:
        return int(np.count_nonzero(self.point_type == PointType.NOISE1))

    def __eq__(self, other):
        if not isinstance(other, PointClassification):
            return NotImplemented
        return (
            self.k == other.k
            and np.array_equal(self.point_type, other.point_type)
            and np.array_equal(self.seed_order, other.seed_order)
            and np.array_equal(self.weak_order, other.weak_order)
        )

    __hash__ = None


def canonical_order(idx, in_degree) -> np.ndarray:
    """Sort ``idx`` by descending in-degree, then ascending index."""
    idx = np.asarray(idx, dtype=np.int64)
    return idx[np.lexsort((idx, -np.asarray(in_degree)[idx]))]


def classify_points(graph: NeighborGraph) -> PointClassification:
    """Split points into seeds, weak points and noise of type 1.

    A point with no mutual neighbor is noise-1, whatever its in-degree. Of
    the rest, points referred to by at least ``k`` others are strong (seeds)
    and the remainder weak.
    """
    k = graph.k
    in_degree = graph.in_degree
    point_type = np.full(graph.n, PointType.WEAK, dtype=np.int8)
    point_type[in_degree >= k] = PointType.STRONG
    point_type[graph.mnn_size == 0] = PointType.NOISE1

    seed_order = canonical_order(np.flatnonzero(point_type == PointType.STRONG), in_degree)
    weak_order = canonical_order(np.flatnonzero(point_type == PointType.WEAK), in_degree)
    ratio = in_degree / float(k)
    for arr in (point_type, ratio, seed_order, weak_order):
        arr.setflags(write=False)
    return PointClassification(
        k=k,
        point_type=point_type,
        ratio=ratio,
        seed_order=seed_order,
        weak_order=weak_order,
    )
