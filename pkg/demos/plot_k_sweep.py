"""
How the point types move with K
===============================

A small sweep on two interleaved half moons. Small K leaves many points
without a mutual neighbor; larger K turns most of them into weak
points that get absorbed in the second phase.
"""

import numpy as np

from denmune import PointSet, sweep

rng = np.random.default_rng(0)
t = rng.uniform(0, np.pi, 300)
upper = np.c_[np.cos(t), np.sin(t)]
lower = np.c_[1 - np.cos(t), 0.5 - np.sin(t)]
x = np.vstack([upper, lower]) + 0.06 * rng.standard_normal((600, 2))
truth = np.repeat([0, 1], 300)

report = sweep(PointSet(x, truth), 1, 40)

print(" k strong  weak noise1 noise2  m    f1")
for row in report.rows[::3]:
    print(f"{row.k:2d} {row.n_strong:6d} {row.n_weak_assigned:5d} {row.n_noise1:6d} "
          f"{row.n_noise2:6d} {row.m:2d} {row.f1:5.3f}")

###############################################################################
# ``best`` picks the smallest K reaching the top score.
for metric in ("f1", "nmi", "ari"):
    k, score = report.best(metric)
    print(f"best {metric}: {score:.3f} at k={k}")
