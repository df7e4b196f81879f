"""Figures for the attack matrix."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

COLORS = ["#4c9a5b", "#c8553d", "#b0b0b0"]  # blocked, succeeds, mixed


def _style():
    plt.rcParams.update({
        "font.size": 9,
        "axes.titlesize": 10,
        "savefig.dpi": 150,
        "svg.hashsalt": "akasim",
    })


def plot_matrix(report, path) -> None:
    """Heatmap of attack outcomes, scenarios down, variants across."""
    _style()
    scenarios, variants = report.scenarios(), report.variants()
    grid, text = [], []
    for s in scenarios:
        row, labels = [], []
        for v in variants:
            cell = report.cell(s, v)
            row.append(2 if cell.attack_succeeded is None else int(cell.attack_succeeded))
            labels.append(cell.label)
        grid.append(row)
        text.append(labels)

    fig, ax = plt.subplots(figsize=(1.1 * len(variants) + 2.5, 0.5 * len(scenarios) + 1.5))
    ax.imshow(grid, cmap=ListedColormap(COLORS), vmin=0, vmax=2, aspect="auto")
    ax.set_xticks(range(len(variants)))
    ax.set_xticklabels([v.value for v in variants], rotation=35, ha="right")
    ax.set_yticks(range(len(scenarios)))
    ax.set_yticklabels(scenarios)
    for i, labels in enumerate(text):
        for j, label in enumerate(labels):
            ax.text(j, i, label, ha="center", va="center", fontsize=7, color="white")
    ax.set_title(f"attack outcomes (seeds {','.join(map(str, report.seeds))})")
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
