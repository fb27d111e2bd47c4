"""Run DenMune over a range of K and score every run."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .classification import classify_points
from .engine import assign_weak_points, cluster_graph, create_clusters_skeleton
from .errors import InvalidParameterError
from .metrics import ari, contingency, f1_matched, nmi
from .neighbor_graph import PointSet, build_neighbor_graph

__all__ = ["SweepRow", "SweepReport", "sweep", "bench"]

SCORES = ("f1", "nmi", "ari")


@dataclass(frozen=True)
class SweepRow:
    k: int
    n_strong: int
    n_weak_assigned: int
    n_noise1: int
    n_noise2: int
    m: int
    f1: Optional[float] = None
    nmi: Optional[float] = None
    ari: Optional[float] = None

    FIELDS = ("k", "n_strong", "n_weak_assigned", "n_noise1", "n_noise2", "m", "f1", "nmi", "ari")


@dataclass
class SweepReport:
    rows: list = field(default_factory=list)

    def best(self, metric: str = "f1"):
        """``(k, score)`` of the highest score, smallest K on ties."""
        if metric not in SCORES:
            raise InvalidParameterError(f"unknown metric {metric!r}")
        scored = [(getattr(r, metric), -r.k) for r in self.rows if getattr(r, metric) is not None]
        if not scored:
            return None
        score, neg_k = max(scored)
        return -neg_k, score

    @property
    def best_k(self) -> dict:
        return {m: b for m in SCORES if (b := self.best(m)) is not None}


def _check_range(n, k_min, k_max):
    if not 1 <= k_min <= k_max:
        raise InvalidParameterError(f"need 1 <= k_min <= k_max, got {k_min}..{k_max}")
    if k_max >= n:
        raise InvalidParameterError(f"k must be < N (k_max={k_max}, N={n})")


def sweep(points: PointSet, k_min: int, k_max: int, truth=None, strategy="auto",
          mode="members", policy="noise_as_singletons", n_jobs=1) -> SweepReport:
    """One row per ``k`` in ``[k_min, k_max]``.

    The neighbor ranking is computed once at ``k_max`` and truncated for the
    smaller neighborhoods. Scores are filled only when ``truth`` (or the
    point set's own truth labels) is available.
    """
    if not isinstance(points, PointSet):
        points = PointSet(points)
    _check_range(points.n, k_min, k_max)
    if truth is None:
        truth = points.truth_labels
    full = build_neighbor_graph(points, k_max, strategy=strategy, n_jobs=n_jobs)
    report = SweepReport()
    for k in range(k_min, k_max + 1):
        result = cluster_graph(full.restrict(k), mode)
        scores = {}
        if truth is not None:
            table = contingency(result.labels, truth, policy)
            scores = {"f1": f1_matched(table), "nmi": nmi(table), "ari": ari(table)}
        report.rows.append(SweepRow(k, *result.counts, m=result.m, **scores))
    return report


def bench(points: PointSet, k_list, repeats: int = 3, strategy="auto", mode="members",
          n_jobs=1) -> list:
    """Per-phase wall time as ``(k, n, phase, seconds)`` rows.

    Phases are ``graph`` (neighbor search), ``phase1`` (classification and
    skeleton) and ``phase2`` (weak-point assignment). Each value is the
    median over ``repeats`` runs.
    """
    if not isinstance(points, PointSet):
        points = PointSet(points)
    if repeats < 1:
        raise InvalidParameterError("repeats must be >= 1")
    k_list = list(k_list)
    for k in k_list:
        if k < 1 or k >= points.n:
            raise InvalidParameterError(f"k must be in [1, N) (k={k}, N={points.n})")

    rows = []
    for k in k_list:
        times = {"graph": [], "phase1": [], "phase2": []}
        for _ in range(repeats):
            t0 = time.perf_counter()
            graph = build_neighbor_graph(points, k, strategy=strategy, n_jobs=n_jobs)
            graph.mnn  # materialize lazily built sets inside the timed region
            t1 = time.perf_counter()
            cls = classify_points(graph)
            skeleton = create_clusters_skeleton(cls.seed_order, graph)
            t2 = time.perf_counter()
            assign_weak_points(skeleton, cls.weak_order, graph, mode)
            t3 = time.perf_counter()
            times["graph"].append(t1 - t0)
            times["phase1"].append(t2 - t1)
            times["phase2"].append(t3 - t2)
        for phase, values in times.items():
            rows.append((k, points.n, phase, float(np.median(values))))
    return rows

