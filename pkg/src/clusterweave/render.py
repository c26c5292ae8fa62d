"""Matplotlib figures for quivers, exchange graphs, and weave diagrams.

Figures are deterministic: layouts depend only on the input data, never on
randomness, so repeated renders of the same object are identical.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.figure import Figure
from matplotlib.lines import Line2D
from matplotlib.patches import FancyArrowPatch

from .cluster import ExchangeGraphReport
from .quiver import IceQuiver
from .weave import TETRAVALENT, TRIVALENT, Weave, replay

_COLORS = ["#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085"]


def _circle_layout(count: int, radius: float = 1.0) -> list[tuple[float, float]]:
    if count == 1:
        return [(0.0, 0.0)]
    return [
        (
            radius * math.cos(2 * math.pi * i / count + math.pi / 2),
            radius * math.sin(2 * math.pi * i / count + math.pi / 2),
        )
        for i in range(count)
    ]


def quiver_figure(q: IceQuiver) -> Figure:
    """Vertices on a circle: circles mutable, squares frozen; arrows labeled
    with multiplicities above one."""
    fig, ax = plt.subplots(figsize=(4, 4))
    positions = _circle_layout(max(q.n, 1))
    for v in range(1, q.n + 1):
        x, y = positions[v - 1]
        marker = "s" if v in q.frozen else "o"
        ax.scatter([x], [y], s=700, marker=marker, facecolor="white",
                   edgecolor="black", zorder=3)
        ax.annotate(str(v), (x, y), ha="center", va="center", zorder=4)
    for i, j, mult in q.arrows():
        (x0, y0), (x1, y1) = positions[i - 1], positions[j - 1]
        arrow = FancyArrowPatch(
            (x0, y0), (x1, y1), arrowstyle="-|>", mutation_scale=14,
            shrinkA=16, shrinkB=16, color="black", zorder=2,
        )
        ax.add_patch(arrow)
        if mult > 1:
            ax.annotate(
                str(mult),
                ((x0 + x1) / 2, (y0 + y1) / 2),
                ha="center", va="bottom", fontsize=9,
            )
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    return fig


def exchange_graph_figure(report: ExchangeGraphReport) -> Figure:
    """Seeds on a circle, mutation adjacencies as edges."""
    fig, ax = plt.subplots(figsize=(5, 5))
    count = max(len(report.seeds), 1)
    positions = _circle_layout(count)
    for a, b in report.edges:
        (x0, y0), (x1, y1) = positions[a], positions[b]
        ax.add_line(Line2D([x0, x1], [y0, y1], color="#888888", zorder=1))
    for idx in range(len(report.seeds)):
        x, y = positions[idx]
        ax.scatter([x], [y], s=600, facecolor="white", edgecolor="black", zorder=2)
        ax.annotate(str(idx), (x, y), ha="center", va="center", zorder=3)
    title = f"{len(report.seeds)} seeds"
    if not report.exhausted:
        title += " (truncated)"
    ax.set_title(title)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    return fig


def weave_figure(w: Weave) -> Figure:
    """Strand diagram of a weave, top to bottom, colored by letter.

    Each move occupies one horizontal band; strands are the word's letters,
    drawn at their positions, merging at trivalent moves, crossing at
    tetravalent moves, and rewiring at hexavalent moves.
    """
    words = replay(w)
    rows = len(words)
    fig, ax = plt.subplots(figsize=(max(4, len(words[0])), max(3, rows * 0.9)))

    def color(letter: int) -> str:
        return _COLORS[(letter - 1) % len(_COLORS)]

    def xpos(word_len: int, slot: int) -> float:
        # Center each row so shrinking words stay visually balanced.
        return slot - (word_len - 1) / 2

    for row, move in enumerate(w.moves):
        top_word = words[row]
        bottom_word = words[row + 1]
        y0, y1 = -row, -(row + 1)
        p = move.pos
        if move.kind == TRIVALENT:
            span = {p: p, p + 1: p}
            shift = 1
        elif move.kind == TETRAVALENT:
            span = {p: p + 1, p + 1: p}
            shift = 0
        else:
            span = {p: p, p + 1: p + 1, p + 2: p + 2}
            shift = 0
        for slot, letter in enumerate(top_word):
            if slot in span:
                target = span[slot]
            elif slot > max(span):
                target = slot - shift
            else:
                target = slot
            ax.add_line(
                Line2D(
                    [xpos(len(top_word), slot), xpos(len(bottom_word), target)],
                    [y0, y1],
                    color=color(letter),
                    linewidth=2,
                )
            )
        marker = {"tri": "o", "tet": "s", "hex": "h"}[move.kind]
        ax.scatter(
            [xpos(len(bottom_word), span[p])], [y1], marker=marker, s=70,
            facecolor="white", edgecolor="black", zorder=3,
        )
    if not w.moves:
        for slot, letter in enumerate(words[0]):
            x = xpos(len(words[0]), slot)
            ax.add_line(Line2D([x, x], [0, -1], color=color(letter), linewidth=2))
    for slot, letter in enumerate(words[0]):
        ax.annotate(
            str(letter), (xpos(len(words[0]), slot), 0.15), ha="center", fontsize=9
        )
    bottom = words[-1]
    base = -(len(w.moves) if w.moves else 1)
    for slot, letter in enumerate(bottom):
        ax.annotate(
            str(letter), (xpos(len(bottom), slot), base - 0.25), ha="center", fontsize=9
        )
    ax.axis("off")
    fig.tight_layout()
    return fig


def save_figure(fig: Figure, path: str) -> None:
    """Write the figure; SVG output is byte-reproducible across runs."""
    if path.endswith(".svg"):
        with plt.rc_context({"svg.hashsalt": "clusterweave"}):
            fig.savefig(path, metadata={"Date": None})
    else:
        fig.savefig(path)
    plt.close(fig)
