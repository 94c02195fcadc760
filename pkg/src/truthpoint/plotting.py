"""Figures for iteration traces and fixed-point families."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .fixpoint import IterationTrace  # noqa: E402


def plot_stages(trace: IterationTrace, path, title: str = "") -> None:
    """Step plot of stage size against stage index."""
    sizes = [len(s) for s in trace.stages]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.step(range(len(sizes)), sizes, where="post", color="k", lw=1.5)
    ax.plot(range(len(sizes)), sizes, "o", color="k", ms=4)
    ax.set_xlabel("stage")
    ax.set_ylabel("codes in stage")
    ax.set_xticks(range(len(sizes)))
    ax.set_ylim(bottom=0, top=max(sizes + [1]) + 1)
    ax.set_title(title or f"{trace.kind} iteration, converged at stage {trace.converged_at}")
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_fixed_points(points: list, path, title: str = "fixed points") -> None:
    """Hasse diagram of fixed points ordered by inclusion, layered by size."""
    layers: dict[int, list] = {}
    for p in points:
        layers.setdefault(len(p), []).append(p)
    pos = {}
    for size, members in layers.items():
        for i, p in enumerate(members):
            pos[p] = (i - (len(members) - 1) / 2, size)
    fig, ax = plt.subplots(figsize=(6, 4))
    for p in points:
        for q in points:
            covers = p < q and not any(p < r < q for r in points)
            if covers:
                (x0, y0), (x1, y1) = pos[p], pos[q]
                ax.plot([x0, x1], [y0, y1], color="0.6", lw=1, zorder=1)
    for p, (x, y) in pos.items():
        label = "{" + ", ".join(f"#{c}" for c in sorted(p)) + "}"
        ax.scatter([x], [y], s=40, color="k", zorder=2)
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(6, 4), fontsize=8)
    ax.set_ylabel("size")
    ax.set_xticks([])
    ax.set_title(title)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.spines["bottom"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
