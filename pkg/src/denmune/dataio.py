"""Dataset loading, label files and synthetic fixtures."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DatasetParseError, InvalidInputError, InvalidParameterError
from .neighbor_graph import PointSet

__all__ = [
    "DELIMITERS",
    "DatasetSpec",
    "load_dataset",
    "load_labels",
    "save_labels",
    "densify_labels",
    "generate_blobs",
]

DELIMITERS = {"comma": ",", "tab": "\t", "whitespace": None}


@dataclass(frozen=True)
class DatasetSpec:
    """Where and how to read a numeric table.

    ``label_column`` is a 0-based column index holding ground-truth labels;
    every other column is a coordinate.
    """

    path: str
    delimiter: str = "comma"
    label_column: Optional[int] = None
    has_header: bool = False

    def __post_init__(self):
        if self.delimiter not in DELIMITERS:
            raise InvalidParameterError(
                f"unknown delimiter {self.delimiter!r}; expected one of {', '.join(DELIMITERS)}"
            )
        if self.label_column is not None and self.label_column < 0:
            raise InvalidParameterError("label_column must be a non-negative column index")


def densify_labels(raw) -> np.ndarray:
    """Map arbitrary label tokens to ``0, 1, ...`` in order of first appearance."""
    codes = {}
    return np.array([codes.setdefault(tok, len(codes)) for tok in raw], dtype=np.int64)


def _split(line, sep):
    cells = line.split(sep)
    return [c.strip() for c in cells]


def load_dataset(spec: DatasetSpec) -> PointSet:
    """Read ``spec.path`` into a :class:`PointSet`.

    Raises
    ------
    FileNotFoundError, OSError
        If the file cannot be read.
    DatasetParseError
        On ragged rows or non-numeric coordinates, naming line and column
        (1-based).
    """
    sep = DELIMITERS[spec.delimiter]
    rows, raw_labels = [], []
    width = None
    with open(spec.path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if spec.has_header and lineno == 1:
                continue
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            cells = _split(line.strip(), sep)
            if width is None:
                width = len(cells)
                if spec.label_column is not None and spec.label_column >= width:
                    raise DatasetParseError(
                        f"label column {spec.label_column} outside {width} columns",
                        line=lineno,
                    )
                if spec.label_column is not None and width < 2:
                    raise DatasetParseError("no coordinate column besides the labels", line=lineno)
            elif len(cells) != width:
                raise DatasetParseError(
                    f"expected {width} columns, found {len(cells)}", line=lineno
                )
            coords = []
            for col, cell in enumerate(cells):
                if col == spec.label_column:
                    raw_labels.append(cell)
                    continue
                try:
                    value = float(cell)
                except ValueError:
                    raise DatasetParseError(
                        f"non-numeric value {cell!r}", line=lineno, column=col + 1
                    ) from None
                if not math.isfinite(value):
                    raise DatasetParseError(
                        f"non-finite value {cell!r}", line=lineno, column=col + 1
                    )
                coords.append(value)
            rows.append(coords)
    if not rows:
        raise InvalidInputError(f"{spec.path}: no data rows")
    truth = densify_labels(raw_labels) if spec.label_column is not None else None
    return PointSet(np.array(rows, dtype=np.float64), truth)


def load_labels(path, densify: bool = False) -> np.ndarray:
    """Read one label per line.

    With ``densify`` the tokens may be arbitrary strings; otherwise they must
    be integers (the format written by :func:`save_labels`).
    """
    with open(path, "r", encoding="utf-8") as fh:
        tokens = [(n, line.strip()) for n, line in enumerate(fh, start=1) if line.strip()]
    if densify:
        return densify_labels(tok for _, tok in tokens)
    out = np.empty(len(tokens), dtype=np.int64)
    for i, (lineno, tok) in enumerate(tokens):
        try:
            out[i] = int(tok)
        except ValueError:
            raise DatasetParseError(f"label {tok!r} is not an integer", line=lineno) from None
    return out


def save_labels(result, path) -> None:
    """Write labels, one integer per line, in input order.

    ``result`` is a :class:`~denmune.engine.ClusteringResult` or any label
    sequence. Clusters are ``0..m-1``, noise-1 ``-1``, noise-2 ``-2``.
    """
    labels = getattr(result, "labels", result)
    text = "".join(f"{int(v)}\n" for v in np.asarray(labels).ravel())
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def generate_blobs(n_per_cluster: int, centers, spread: float, rng_seed: int = 0) -> PointSet:
    """Isotropic Gaussian blobs, ``n_per_cluster`` points around each center.

    ``spread`` is the per-axis standard deviation. Output is ordered by
    center and fully determined by ``rng_seed``.
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    if centers.shape[0] == 0:
        raise InvalidParameterError("at least one center is required")
    if n_per_cluster < 1:
        raise InvalidParameterError("n_per_cluster must be positive")
    if not spread >= 0:
        raise InvalidParameterError("spread must be non-negative")
    rng = np.random.default_rng(rng_seed)
    noise = rng.standard_normal((centers.shape[0], n_per_cluster, centers.shape[1]))
    coords = (centers[:, None, :] + spread * noise).reshape(-1, centers.shape[1])
    truth = np.repeat(np.arange(centers.shape[0]), n_per_cluster)
    return PointSet(coords, truth)
