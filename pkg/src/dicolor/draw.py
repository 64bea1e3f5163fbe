"""Matplotlib rendering: digraphs on a circular layout, written to files."""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .digraph import Coloring, Digraph

_PALETTE = plt.get_cmap("tab20")


def _layout(n: int) -> list[tuple[float, float]]:
    if n == 1:
        return [(0.0, 0.0)]
    return [
        (math.cos(2 * math.pi * k / n - math.pi / 2),
         math.sin(2 * math.pi * k / n - math.pi / 2))
        for k in range(n)
    ]


def draw_digraph(
    d: Digraph,
    path: str,
    coloring: Coloring | None = None,
    title: str | None = None,
) -> str:
    """Render the digraph to an image file and return the path.

    Vertices sit on a circle; digon arcs bow apart so both directions
    stay visible.  With a colouring, vertices are filled by colour class
    (the palette cycles past 20 classes, labels stay exact).
    """
    pts = _layout(max(d.n, 1))
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    for u, v in d.arcs:
        rad = 0.16 if d.has_arc(v, u) else 0.06
        ax.add_patch(
            FancyArrowPatch(
                pts[u],
                pts[v],
                arrowstyle="-|>",
                mutation_scale=13,
                connectionstyle=f"arc3,rad={rad}",
                color="0.35",
                lw=1.1,
                shrinkA=11,
                shrinkB=11,
                zorder=1,
            )
        )
    for v in range(d.n):
        face = "0.88" if coloring is None else _PALETTE(coloring.colors[v] % 20)
        ax.scatter(*pts[v], s=480, c=[face], edgecolors="0.2", zorder=2)
        label = str(v) if coloring is None else f"{v}:{coloring.colors[v]}"
        ax.annotate(label, pts[v], ha="center", va="center", fontsize=8, zorder=3)
    if title:
        ax.set_title(title)
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
