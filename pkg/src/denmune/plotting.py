"""Self-contained SVG scatter plots of 2-D clusterings."""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError

__all__ = ["PALETTE", "render_svg", "write_svg"]

# tab20, reordered so neighboring cluster ids get contrasting hues
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
    "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5",
    "#c49c94", "#f7b6d2", "#9edae5", "#dbdb8d", "#393b79",
)


def _css(m):
    lines = [
        ".noise1{fill:none;stroke:#000000;stroke-width:0.8}",
        ".noise2{fill:#ffffff;stroke:#808080;stroke-width:0.8;stroke-dasharray:1.5 1}",
    ]
    for j in range(m):
        lines.append(f".c{j}{{fill:{PALETTE[j % len(PALETTE)]};stroke:none}}")
    return "\n".join(lines)


def render_svg(coords, labels, size: int = 600, margin: int = 20, radius: float = 2.5,
               title: str = "") -> str:
    """SVG text with one ``<circle>`` per point.

    Cluster ``j`` is drawn with CSS class ``c{j}``; noise points get class
    ``noise1`` (hollow black) or ``noise2`` (dashed grey). Output depends only
    on the inputs.
    """
    coords = np.asarray(coords, dtype=np.float64)
    labels = np.asarray(labels).astype(np.int64).ravel()
    if coords.ndim != 2 or coords.shape[1] != 2:
        dim = coords.shape[1] if coords.ndim == 2 else coords.ndim
        raise InvalidInputError(
            f"plotting needs 2-D points, got D={dim}; reduce the data to two dimensions first"
        )
    if labels.size != coords.shape[0]:
        raise InvalidInputError(f"{labels.size} labels for {coords.shape[0]} points")

    lo = coords.min(axis=0)
    span = coords.max(axis=0) - lo
    scale = (size - 2 * margin) / max(float(span.max()), 1e-12)
    px = margin + (coords[:, 0] - lo[0]) * scale
    py = size - margin - (coords[:, 1] - lo[1]) * scale  # SVG y grows downward

    m = int(labels.max(initial=-1)) + 1
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<style>\n{_css(m)}\n</style>",
        f'<rect width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    if title:
        out.append(f'<title>{_escape(title)}</title>')
    for x, y, lab in zip(px.tolist(), py.tolist(), labels.tolist()):
        if lab >= 0:
            cls = f"c{lab}"
        elif lab == -1:
            cls = "noise1"
        else:
            cls = "noise2"
        out.append(f'<circle class="{cls}" cx="{x:.2f}" cy="{y:.2f}" r="{radius:g}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def write_svg(path, coords, labels, **kwargs) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(coords, labels, **kwargs))
