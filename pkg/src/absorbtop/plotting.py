"""Figures that accompany audit reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .audit import FAILS, HOLDS, NOT_APPLICABLE, ClaimReport  # noqa: E402

VERDICT_COLORS = {HOLDS: "#4c9a2a", FAILS: "#c0392b", NOT_APPLICABLE: "#b0b0b0"}


def get_report_figure(width: float = 8.0, n_rows: int = 10):
    """Figure with font sizes scaled to ``width`` inches; height grows with rows."""
    plt.rcParams.update(
        {
            "font.size": width * 1.2,
            "axes.titlesize": width * 1.5,
            "axes.spines.top": False,
            "axes.spines.right": False,
            "svg.hashsalt": "absorbtop",
        }
    )
    fig, ax = plt.subplots(figsize=(width, max(3.0, 0.35 * n_rows + 1.2)), facecolor="w")
    return fig, ax


def plot_audit_summary(reports: list[ClaimReport], path: str | Path, title: str = "Claim audit") -> Path:
    """Horizontal stacked bars: verdict counts per claim."""
    claims = [r.claim for r in reports]
    tallies = [r.tally() for r in reports]
    fig, ax = get_report_figure(n_rows=len(claims))
    y = range(len(claims))
    left = [0] * len(claims)
    for verdict in (HOLDS, FAILS, NOT_APPLICABLE):
        counts = [t[verdict] for t in tallies]
        ax.barh(list(y), counts, left=left, color=VERDICT_COLORS[verdict], label=verdict, height=0.7)
        left = [a + b for a, b in zip(left, counts)]
    ax.set_yticks(list(y))
    ax.set_yticklabels(claims)
    ax.invert_yaxis()
    ax.set_xlabel("instances")
    ax.set_title(title)
    ax.legend(loc="lower right", frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, metadata={"Date": None} if path.suffix == ".svg" else None)
    plt.close(fig)
    return path
