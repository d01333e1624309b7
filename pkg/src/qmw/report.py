"""Figures for count tables."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .enumeration import CountTable  # noqa: E402

SERIES = (
    ("medial", "medial"),
    ("two_reductive", "2-reductive"),
    ("involutory", "involutory"),
    ("two_reductive_involutory", "2-reductive involutory"),
    ("non2red", "not 2-reductive"),
    ("latin", "latin"),
)


def plot_counts(table: CountTable, path: str | Path) -> Path:
    """Log-scale line plot of the count columns against n; returns the written path."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for attr, label in SERIES:
        pts = [(r.n, getattr(r, attr)) for r in table.rows if getattr(r, attr)]
        if pts:
            xs, ys = zip(*pts)
            ax.plot(xs, ys, marker="o", label=label)
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("isomorphism classes")
    ax.set_title("Medial quandles of order n")
    ax.grid(True, which="major", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
