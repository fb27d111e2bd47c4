"""
Clustering blobs with background noise
======================================

Three Gaussian blobs of different spread, sprinkled with uniform
points. We cluster them, look at how the points were typed, and write
an SVG of the result next to this script.
"""

from pathlib import Path

import numpy as np

from denmune import PointType, denmune, evaluate, generate_blobs
from denmune.plotting import write_svg

rng = np.random.default_rng(4)
blobs = generate_blobs(150, [[0, 0], [12, 0], [6, 10]], 1.2, rng_seed=4)
clutter = rng.uniform(-6, 18, size=(60, 2))
x = np.vstack([blobs.coords, clutter])
truth = np.concatenate([blobs.truth_labels, np.full(len(clutter), 3)])

###############################################################################
# One call does the whole pipeline: neighbor graph, point typing,
# skeleton construction from strong points, then weak-point assignment.
res = denmune(x, k=15)
print("clusters:", res.m)
print("counts:  ", res.counts)

###############################################################################
# The classification is kept on the result. Strong points are the ones
# that built the skeleton.
types = res.classification.point_type
for t in PointType:
    print(f"{t.name:7s}", np.count_nonzero(types == t))

###############################################################################
# Scores against the generating labels. The clutter is its own "class",
# so a perfect F1 is not expected here.
print(evaluate(res.labels, truth))

out = Path(__file__).with_suffix(".svg")
write_svg(out, x, res.labels, title="blobs + clutter, k=15")
print("wrote", out)
