"""Cohort figure rendered next to the cohort CSV."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .diagnosis import CohortSummary  # noqa: E402


def plot_cohort(summary: CohortSummary, path: str | Path) -> Path:
    """Bar chart of prevalence and mean score per challenge, saved as PNG."""
    path = Path(path)
    ids = [c.challenge_id for c in summary.challenges]
    x = range(len(ids))
    fig, ax = plt.subplots(figsize=(7, 3.6), dpi=100)
    try:
        ax.bar([i - 0.2 for i in x], [c.prevalence for c in summary.challenges], width=0.4, label="prevalence")
        ax.bar([i + 0.2 for i in x], [c.mean_score for c in summary.challenges], width=0.4, label="mean score")
        ax.set_xticks(list(x), ids)
        ax.set_ylim(0, 1)
        ax.set_ylabel("share / score")
        ax.set_title(f"Learning challenges across {summary.n_submissions} submissions")
        ax.legend(loc="upper right", fontsize="small")
        fig.tight_layout()
        fig.savefig(path, format="png", metadata={"Software": None})
    finally:
        plt.close(fig)
    return path
