"""Two-phase DenMune clustering.

Phase I grows cluster skeletons from seed points: each seed contributes
itself plus its mutual neighbors that are also seeds, and every cluster
touching that group is merged with it. Phase II visits weak points one at a
time, in canonical order, and attaches each to the cluster holding most of
its mutual neighbors; weak points with no such neighbor become noise of
type 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .classification import PointClassification, classify_points
from .errors import InvalidParameterError
from .neighbor_graph import NeighborGraph, build_neighbor_graph

__all__ = [
    "NOISE1",
    "NOISE2",
    "UNASSIGNED",
    "MODES",
    "ClusterModel",
    "Counts",
    "ClusteringResult",
    "create_clusters_skeleton",
    "assign_weak_points",
    "cluster_graph",
    "denmune",
    "DenMune",
]

NOISE1 = -1
NOISE2 = -2
UNASSIGNED = -3

MODES = ("members", "seeds_only")


@dataclass(frozen=True, eq=False)
class ClusterModel:
    """Clusters as disjoint point sets plus the matching per-point labels.

    ``labels[i]`` is a cluster index in ``[0, m)`` or one of ``NOISE1``,
    ``NOISE2``, ``UNASSIGNED``.
    """

    clusters: tuple
    labels: np.ndarray

    @property
    def m(self) -> int:
        return len(self.clusters)

    @property
    def n(self) -> int:
        return self.labels.shape[0]


class Counts(NamedTuple):
    n_strong: int
    n_weak_assigned: int
    n_noise1: int
    n_noise2: int


@dataclass(frozen=True, eq=False)
class ClusteringResult:
    model: ClusterModel
    classification: PointClassification
    k: int
    counts: Counts

    @property
    def labels(self) -> np.ndarray:
        return self.model.labels

    @property
    def m(self) -> int:
        return self.model.m


def _freeze(clusters, labels) -> ClusterModel:
    labels = np.asarray(labels, dtype=np.int64)
    labels.setflags(write=False)
    return ClusterModel(tuple(frozenset(c) for c in clusters), labels)


def create_clusters_skeleton(seed_order, graph: NeighborGraph) -> ClusterModel:
    """Phase I: partition the seeds into cluster skeletons.

    Seeds are visited in the given order. Seed ``s`` brings the group
    ``{s} | (mnn[s] & seeds)``; every existing cluster sharing a point with the
    group is fused with it, otherwise the group opens a new cluster. Clusters
    are numbered by the step at which their oldest part was created.

    Points with an empty mutual-neighbor set are labelled ``NOISE1``; all other
    non-seed points stay ``UNASSIGNED``.
    """
    seeds = np.asarray(seed_order, dtype=np.int64)
    labels = np.full(graph.n, UNASSIGNED, dtype=np.int64)
    labels[graph.mnn_size == 0] = NOISE1

    is_seed = np.zeros(graph.n, dtype=bool)
    is_seed[seeds] = True
    mnn = graph.mnn

    owner = {}    # point -> cluster key
    members = {}  # cluster key -> set of points
    birth = {}    # cluster key -> step it (or its oldest part) was created

    for step, s in enumerate(seeds.tolist()):
        group = {s}
        group.update(t for t in mnn[s] if is_seed[t])
        hit = {owner[p] for p in group if p in owner}
        if not hit:
            key = step
            members[key] = set()
            birth[key] = step
        else:
            # fold smaller clusters into the largest one
            key = max(hit, key=lambda h: (len(members[h]), -h))
            for other in hit:
                if other == key:
                    continue
                absorbed = members.pop(other)
                for p in absorbed:
                    owner[p] = key
                members[key] |= absorbed
                birth[key] = min(birth[key], birth.pop(other))
        for p in group:
            owner[p] = key
        members[key] |= group

    ordered = sorted(members, key=birth.__getitem__)
    clusters = [members[key] for key in ordered]
    for j, cluster in enumerate(clusters):
        labels[list(cluster)] = j
    return _freeze(clusters, labels)


def assign_weak_points(model: ClusterModel, weak_order, graph: NeighborGraph,
                       mode: str = "members") -> ClusterModel:
    """Phase II: attach each weak point to its best-connected cluster.

    A weak point joins the cluster containing the largest number of its
    mutual neighbors, the lowest cluster index winning ties; with no mutual
    neighbor in any cluster it becomes ``NOISE2``. In ``"members"`` mode an
    attached point counts for the weak points after it; in ``"seeds_only"``
    mode only the Phase I members are counted.
    """
    if mode not in MODES:
        raise InvalidParameterError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    labels = model.labels.copy()
    votes_from = labels if mode == "members" else model.labels
    clusters = [set(c) for c in model.clusters]
    mnn = graph.mnn

    for q in np.asarray(weak_order, dtype=np.int64).tolist():
        tally = {}
        for j in mnn[q]:
            c = votes_from[j]
            if c >= 0:
                tally[c] = tally.get(c, 0) + 1
        if not tally:
            labels[q] = NOISE2
            continue
        best = min(tally, key=lambda c: (-tally[c], c))
        labels[q] = best
        clusters[best].add(q)
    return _freeze(clusters, labels)


def cluster_graph(graph: NeighborGraph, mode: str = "members") -> ClusteringResult:
    """Run both phases on an already built neighbor graph."""
    classification = classify_points(graph)
    skeleton = create_clusters_skeleton(classification.seed_order, graph)
    model = assign_weak_points(skeleton, classification.weak_order, graph, mode)
    n_noise2 = int(np.count_nonzero(model.labels == NOISE2))
    counts = Counts(
        n_strong=classification.n_strong,
        n_weak_assigned=classification.n_weak - n_noise2,
        n_noise1=classification.n_noise1,
        n_noise2=n_noise2,
    )
    return ClusteringResult(model=model, classification=classification, k=graph.k, counts=counts)


def denmune(points, k: int, strategy: str = "auto", mode: str = "members",
            n_jobs: int = 1) -> ClusteringResult:
    """Cluster ``points`` with DenMune using ``k`` nearest neighbors.

    Parameters
    ----------
    points : PointSet or array-like of shape (N, D)
    k : int
        Neighborhood size, ``1 <= k < N``. The only tuning parameter.
    strategy : {"auto", "brute_force", "kd_tree"}
        Exact nearest-neighbor search backend.
    mode : {"members", "seeds_only"}
        Which cluster members count as votes in Phase II.
    n_jobs : int
        Threads for the neighbor search.

    Returns
    -------
    ClusteringResult
        Labels are cluster indices, ``NOISE1`` (-1) or ``NOISE2`` (-2).
    """
    if mode not in MODES:
        raise InvalidParameterError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    graph = build_neighbor_graph(points, k, strategy=strategy, n_jobs=n_jobs)
    return cluster_graph(graph, mode)


class DenMune:
    """Estimator-style wrapper around :func:`denmune`.

    >>> import numpy as np
    >>> X = np.array([[0, 0], [0, 1], [100, 100], [100, 101]])
    >>> DenMune(k=1).fit_predict(X).tolist()
    [0, 0, 1, 1]
    """

    def __init__(self, k=10, strategy="auto", mode="members", n_jobs=1):
        self.k = k
        self.strategy = strategy
        self.mode = mode
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        self.result_ = denmune(X, self.k, strategy=self.strategy, mode=self.mode,
                               n_jobs=self.n_jobs)
        self.labels_ = np.asarray(self.result_.labels)
        self.n_clusters_ = self.result_.m
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_
