"""File renderings: sparsity patterns as PBM rasters, frames as SVG."""

from __future__ import annotations

import numpy as np

from framecycles.basis import CycleBasis
from framecycles.model import ModelError, StructuralModel

_PALETTE = (
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#aec7e8", "#98df8a",
)


def render_sparsity(matrix: np.ndarray, path, block_size: int = 1) -> None:
    """Monochrome portable bitmap: one pixel per entry (or per block)."""
    M = np.atleast_2d(np.asarray(matrix))
    rows, cols = M.shape
    if rows % block_size or cols % block_size:
        raise ValueError(f"shape {M.shape} not divisible into {block_size}-blocks")
    h, w = rows // block_size, cols // block_size
    lines = [f"P1", f"{w} {h}"]
    for i in range(h):
        bits = []
        for j in range(w):
            block = M[
                i * block_size : (i + 1) * block_size,
                j * block_size : (j + 1) * block_size,
            ]
            bits.append("1" if np.any(block != 0) else "0")
        lines.append(" ".join(bits))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def render_frame(model: StructuralModel, basis: CycleBasis | None, path) -> None:
    """SVG of the frame: members, supports with their fictitious links, and
    each basis cycle traced in a distinct stroke."""
    if model.ndim != 2:
        raise ModelError("frame rendering is available for planar models only")
    xs = [n.coords[0] for n in model.nodes]
    ys = [n.coords[1] for n in model.nodes]
    margin = 0.15 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    x0, x1 = min(xs) - margin, max(xs) + margin
    y0, y1 = min(ys) - margin, max(ys) + margin
    scale = 80.0
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def pt(coords):
        return (coords[0] - x0) * scale, (y1 - coords[1]) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.2f} {height:.2f}">'
    ]
    for m in model.members:
        ax, ay = pt(model.node(m.a).coords)
        bx, by = pt(model.node(m.b).coords)
        parts.append(
            f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
            'stroke="#333333" stroke-width="2"/>'
        )
    # Fictitious support links, drawn as the chain the ground merge stands for.
    supports = sorted(model.supports, key=lambda s: model.node(s).coords)
    for sa, sb in zip(supports, supports[1:]):
        ax, ay = pt(model.node(sa).coords)
        bx, by = pt(model.node(sb).coords)
        parts.append(
            f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
            'stroke="#d4b106" stroke-width="3" stroke-dasharray="6,4"/>'
        )
    for s in supports:
        sx, sy = pt(model.node(s).coords)
        parts.append(
            f'<rect x="{sx - 6:.2f}" y="{sy - 3:.2f}" width="12" height="6" '
            'fill="#d4b106"/>'
        )
    if basis is not None:
        for i, cycle in enumerate(basis.cycles):
            color = _PALETTE[i % len(_PALETTE)]
            for mid in sorted(cycle.members):
                m = model.member(mid)
                ax, ay = pt(model.node(m.a).coords)
                bx, by = pt(model.node(m.b).coords)
                parts.append(
                    f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
                    f'stroke="{color}" stroke-width="4" stroke-opacity="0.45"/>'
                )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
