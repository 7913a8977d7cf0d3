"""Matplotlib figures for digraphs and verification reports, written to files."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .digraph import Digraph, as_mask  # noqa: E402

__all__ = ["circle_layout", "draw_digraph", "plot_counts", "plot_oracle_sweep", "save_report_figures"]

FILLED = "#4c72b0"
EMPTY = "#f0f0f0"


def circle_layout(n: int) -> list[tuple[float, float]]:
    if n == 1:
        return [(0.0, 0.0)]
    return [(math.cos(math.pi / 2 - 2 * math.pi * k / n), math.sin(math.pi / 2 - 2 * math.pi * k / n)) for k in range(n)]


def draw_digraph(d: Digraph, path, highlight=0, labels=None, title: str | None = None) -> Path:
    """Circle drawing; ``highlight`` vertices are filled, 2-cycles drawn as curved pairs."""
    hl = as_mask(highlight)
    pos = circle_layout(d.n)
    fig, ax = plt.subplots(figsize=(4, 4))
    r = 0.09 if d.n <= 12 else 0.05
    for u, v in d.arcs():
        if u == v:
            x, y = pos[u]
            ax.add_patch(plt.Circle((x * 1.13, y * 1.13), r * 0.9, fill=False, lw=0.8))
            continue
        bend = 0.18 if d.has_arc(v, u) else 0.0
        ax.add_patch(FancyArrowPatch(pos[u], pos[v], arrowstyle="-|>", mutation_scale=10, lw=0.8,
                                     connectionstyle=f"arc3,rad={bend}", shrinkA=14, shrinkB=14, color="0.25"))
    for v, (x, y) in enumerate(pos):
        ax.add_patch(plt.Circle((x, y), r, facecolor=FILLED if hl >> v & 1 else EMPTY, edgecolor="k", lw=0.8, zorder=3))
        ax.text(x, y, str(labels[v]) if labels else str(v), ha="center", va="center", fontsize=7, zorder=4,
                color="white" if hl >> v & 1 else "black")
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=9)
    return _save(fig, path)


def plot_counts(counts: dict, path, title: str = "") -> Path:
    """Horizontal bar chart of integer counts (e.g. census classes)."""
    items = sorted(((k, v) for k, v in counts.items() if isinstance(v, int)), key=lambda kv: kv[1])
    fig, ax = plt.subplots(figsize=(6, 0.35 * max(len(items), 2) + 1))
    ax.barh([k for k, _ in items], [v for _, v in items], color=FILLED)
    ax.set_xscale("symlog")
    ax.set_xlabel("count")
    ax.set_title(title, fontsize=9)
    ax.tick_params(labelsize=7)
    fig.tight_layout()
    return _save(fig, path)


def plot_oracle_sweep(series, path, title: str = "") -> Path:
    """Scatter of closed-form value against exact value; every point should lie on y = x."""
    fig, ax = plt.subplots(figsize=(4, 4))
    if series:
        closed = [row[1] for row in series]
        exact = [row[2] for row in series]
        top = max(max(closed), max(exact)) + 1
        ax.plot([0, top], [0, top], color="0.6", lw=0.8, zorder=1)
        ax.scatter(exact, closed, s=12, alpha=0.3, color=FILLED, zorder=2)
    ax.set_xlabel("exact solver")
    ax.set_ylabel("closed form")
    ax.set_title(title, fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def save_report_figures(report, directory) -> list[Path]:
    """Figures for a :class:`~fzforce.verify.SuiteReport`."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if report.counts:
        written.append(plot_counts(report.counts, out / f"{report.name}_counts.png",
                                   f"{report.name}: {report.summary()}"))
    if report.series:
        written.append(plot_oracle_sweep(report.series, out / f"{report.name}_sweep.png",
                                         f"{report.name}: closed form vs exact"))
    if report.counterexample is not None:
        written.append(draw_digraph(report.counterexample, out / f"{report.name}_counterexample.png",
                                    title=report.detail))
    return written


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
