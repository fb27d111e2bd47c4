import os
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

ROOT = Path(__file__).resolve().parents[1]

LINE6 = np.array([[0, 0], [1, 0], [2, 0], [10, 0], [11, 0], [12, 0]], dtype=float)
LINE6_OUTLIER = np.vstack([LINE6, [[5, 0]]])

# filled by test_acceptance, printed after the run
ACCEPTANCE_LINES = []


def random_instance(seed, n_max=500, dim=2):
    """Blobs of mixed density plus uniform background noise."""
    rng = np.random.default_rng(seed)
    n_blobs = int(rng.integers(1, 6))
    sizes = rng.integers(5, max(6, n_max // (n_blobs + 1)), size=n_blobs)
    parts = []
    for size in sizes:
        center = rng.uniform(-20, 20, size=dim)
        parts.append(center + rng.uniform(0.3, 3.0) * rng.standard_normal((size, dim)))
    n_noise = int(rng.integers(0, max(1, n_max - sizes.sum()) // 4 + 1))
    parts.append(rng.uniform(-25, 25, size=(n_noise, dim)))
    x = np.vstack(parts)[:n_max]
    return x[rng.permutation(len(x))]


def grid_instance(seed, n_max=500):
    """Integer coordinates with heavy distance ties and duplicates."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(20, n_max + 1))
    side = int(rng.integers(3, 30))
    return rng.integers(0, side, size=(n, 2)).astype(float)


@pytest.fixture
def line6():
    return LINE6.copy()


@pytest.fixture
def line6_outlier():
    return LINE6_OUTLIER.copy()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
