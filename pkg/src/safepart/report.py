"""Figure rendering for synthesis and simulation artifacts.

All functions write a PNG next to the JSON outputs and return the path.
Rendering is headless (Agg); figures are diagnostics, not a UI.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .graph import InducedSubgraph
from .model import Instance, Labeling, Vec

_CYCLE = plt.rcParams["axes.prop_cycle"].by_key()["color"]


def _as_xy(v: Vec) -> tuple[float, float]:
    return (float(v[0]), float(v[1]) if len(v) > 1 else 0.0)


def labeling_figure(
    inst: Instance,
    g: InducedSubgraph,
    labels: Labeling,
    path,
    title: str | None = None,
) -> Path:
    """Draw the safe set, the retained vertex set, and label-colored moves.

    Only meaningful for one- and two-dimensional instances; higher dimensions
    raise ValueError (callers should simply skip the figure).
    """
    if inst.n > 2:
        raise ValueError("labeling figures are drawn only for n <= 2")
    fig, ax = plt.subplots(figsize=(6, 6))
    safe_pts = [_as_xy(p) for p in sorted(inst.safe.points)]
    ax.scatter(*zip(*safe_pts), s=260, c="#e6e6e6", edgecolors="#999999", zorder=1)
    core_pts = [_as_xy(p) for p in g.vertices]
    ax.scatter(*zip(*core_pts), s=260, c="#b9e4b4", edgecolors="#4a7d45", zorder=2)
    x0 = _as_xy(inst.x0)
    ax.scatter([x0[0]], [x0[1]], s=60, c="black", zorder=5)

    for i, row in enumerate(g.out_adj):
        sx, sy = _as_xy(g.vertices[i])
        for k, j in row:
            d = labels[g.controls[k]]
            color = _CYCLE[(d - 1) % len(_CYCLE)]
            tx, ty = _as_xy(g.vertices[j])
            if (sx, sy) == (tx, ty):
                ax.add_patch(
                    plt.Circle((sx + 0.12, sy + 0.12), 0.08, fill=False,
                               color=color, zorder=3)
                )
                continue
            ax.add_patch(
                FancyArrowPatch(
                    (sx, sy), (tx, ty), connectionstyle="arc3,rad=0.15",
                    arrowstyle="-|>", mutation_scale=12, color=color,
                    shrinkA=10, shrinkB=10, zorder=4,
                )
            )
    handles = [
        plt.Line2D([], [], color=_CYCLE[(d - 1) % len(_CYCLE)], label=f"label {d}")
        for d in sorted(set(labels.values()))
    ]
    ax.legend(handles=handles, loc="upper right", fontsize=8)
    ax.set_aspect("equal")
    ax.set_title(title or "control labeling")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def trajectory_figure(states: list[Vec], inst: Instance, path, title: str | None = None) -> Path:
    """Plot a trajectory: 2-d path for planar instances, per-coordinate series
    plus the max-norm envelope otherwise."""
    fig, ax = plt.subplots(figsize=(6, 4))
    if inst.n == 2:
        xs = [s[0] for s in states]
        ys = [s[1] for s in states]
        ax.plot(xs, ys, "-o", markersize=3, linewidth=0.8, alpha=0.8)
        ax.scatter([xs[0]], [ys[0]], c="black", zorder=5)
        if inst.safe.k is not None:
            k = inst.safe.k
            ax.add_patch(plt.Rectangle((-k, -k), 2 * k, 2 * k, fill=False,
                                       linestyle="--", color="red"))
        ax.set_aspect("equal")
    else:
        for i in range(inst.n):
            ax.plot([s[i] for s in states], linewidth=0.8, label=f"coord {i}")
        ax.plot([max(abs(c) for c in s) for s in states], "k-", linewidth=1.4,
                label="max-norm")
        if inst.safe.k is not None:
            ax.axhline(inst.safe.k, linestyle="--", color="red")
        ax.set_xlabel("step")
        if inst.n <= 6:
            ax.legend(fontsize=8)
    ax.set_title(title or "trajectory")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def estimator_figure(totals: list[float], path, title: str | None = None) -> Path:
    """Step plot of the greedy labeling's estimator total per assignment."""
    fig, ax = plt.subplots(figsize=(6, 3.2))
    ax.step(range(len(totals)), totals, where="post")
    ax.axhline(1.0, linestyle="--", color="red", linewidth=0.9)
    ax.set_xlabel("controls assigned")
    ax.set_ylabel("estimator total")
    ax.set_title(title or "pessimistic estimator")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
