"""Matplotlib renderings of chamber systems, written to files.

Chambers sit on a circle in index order and panel edges are drawn with
one colour per adjacency colour, matching the DOT palette.  Output is
deterministic given the chamber system.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .chamber_system import DOT_PALETTE, ChamberSystem


def render_chamber_graph(cs: ChamberSystem, path: str | Path, title: str | None = None) -> Path:
    """Draw the edge-coloured chamber graph on a circular layout."""
    path = Path(path)
    n = max(cs.size, 1)
    xs = [math.cos(2 * math.pi * k / n - math.pi / 2) for k in range(cs.size)]
    ys = [math.sin(2 * math.pi * k / n - math.pi / 2) for k in range(cs.size)]
    fig, ax = plt.subplots(figsize=(7, 7))
    for pos, color in enumerate(cs.colors):
        paint = DOT_PALETTE[pos % len(DOT_PALETTE)]
        first = True
        for cl in cs.classes(color):
            for a_i in range(len(cl)):
                for b_i in range(a_i + 1, len(cl)):
                    a, b = cl[a_i], cl[b_i]
                    ax.plot(
                        [xs[a], xs[b]],
                        [ys[a], ys[b]],
                        color=paint,
                        linewidth=1.2,
                        label=str(color) if first else None,
                        zorder=1,
                    )
                    first = False
    ax.scatter(xs, ys, s=40, color="black", zorder=2)
    if cs.size <= 30:
        for k in range(cs.size):
            ax.annotate(
                cs.labels[k],
                (xs[k] * 1.08, ys[k] * 1.08),
                ha="center",
                va="center",
                fontsize=7,
            )
    ax.legend(title="colour", loc="upper right", fontsize=8)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def render_panel_sizes(cs: ChamberSystem, path: str | Path, title: str | None = None) -> Path:
    """Bar chart of panel sizes per colour."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    width = 0.8 / max(len(cs.colors), 1)
    all_sizes = sorted(
        {len(cl) for color in cs.colors for cl in cs.classes(color)}
    )
    for pos, color in enumerate(cs.colors):
        counts = {s: 0 for s in all_sizes}
        for cl in cs.classes(color):
            counts[len(cl)] += 1
        xs = [k + pos * width for k in range(len(all_sizes))]
        ax.bar(
            xs,
            [counts[s] for s in all_sizes],
            width=width,
            color=DOT_PALETTE[pos % len(DOT_PALETTE)],
            label=str(color),
        )
    ax.set_xticks([k + 0.4 - width / 2 for k in range(len(all_sizes))])
    ax.set_xticklabels([str(s) for s in all_sizes])
    ax.set_xlabel("panel size")
    ax.set_ylabel("panels")
    ax.legend(title="colour")
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
