"""Figures written next to CLI output.  Uses the Agg backend, files only."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .graph import Graph  # noqa: E402

DPI = 120


def _circle_layout(n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((0, 2))
    t = 2 * math.pi * np.arange(n) / n
    return np.column_stack([np.cos(t), np.sin(t)])


def draw_graph(ax, g: Graph, labels: list[str] | None = None, highlight: set[int] = frozenset()) -> None:
    pos = _circle_layout(g.order)
    for u, v in g.edges():
        ax.plot(*pos[[u, v]].T, color="0.6", lw=0.8, zorder=1)
    colours = ["tab:red" if i in highlight else "tab:blue" for i in range(g.order)]
    ax.scatter(pos[:, 0], pos[:, 1], c=colours, s=40, zorder=2)
    if labels and g.order <= 40:
        for i, lab in enumerate(labels):
            ax.annotate(lab, pos[i] * 1.12, ha="center", va="center", fontsize=6)
    ax.set_aspect("equal")
    ax.axis("off")


def neighbourhood_figure(nbhd: Graph, labels: list[str], clique: set[int], path: Path, title: str) -> Path:
    fig, ax = plt.subplots(figsize=(5, 5))
    draw_graph(ax, nbhd, labels, clique)
    ax.set_title(title, fontsize=9)
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def levels_figure(levels: list[tuple[int, int]], p: int, n: int, y: int, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    if levels:
        idx, chi = zip(*levels)
        ax.bar(idx, chi, color=["tab:green" if c == p ** n else "tab:orange" for c in chi])
    ax.axhline(p ** n, color="k", ls="--", lw=0.8, label=f"p^n = {p ** n}")
    ax.set_xlabel("level i")
    ax.set_ylabel("chromatic number (or certified lower bound)")
    ax.set_title(f"gadget levels, y = {y}", fontsize=9)
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def embedding_figure(x: Graph, induced: Graph, path: Path, title: str) -> Path:
    def matrix(g: Graph) -> np.ndarray:
        a = np.zeros((g.order, g.order), dtype=int)
        for u, v in g.edges():
            a[u, v] = a[v, u] = 1
        return a

    fig, axes = plt.subplots(1, 2, figsize=(7, 3.5))
    for ax, g, name in zip(axes, (x, induced), ("input", "induced in cubelike graph")):
        ax.imshow(matrix(g), cmap="Greys", vmin=0, vmax=1)
        ax.set_title(name, fontsize=9)
        ax.set_xticks([])
        ax.set_yticks([])
    fig.suptitle(title, fontsize=9)
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    return path
