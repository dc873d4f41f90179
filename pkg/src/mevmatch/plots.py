"""Figure rendering for the report paths (written next to the CSVs)."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .experiment import CompareRow
from .hardness import GrowthRow


def render_compare_figure(rows: Sequence[CompareRow], path: str) -> None:
    """Per-transaction spread of sampled shares against the exact ones."""
    by_t: dict[int, tuple[list[float], list[float]]] = {}
    for r in rows:
        if r.gamma_exact is None:
            continue
        exact, est = by_t.setdefault(r.t_index, ([], []))
        exact.append(r.gamma_exact)
        est.append(r.gamma_rsyp)
    fig, ax = plt.subplots(figsize=(7, 4))
    if by_t:
        ts = sorted(by_t)
        est_series = [by_t[t][1] for t in ts]
        exact_series = [by_t[t][0] for t in ts]
        boxes = ax.boxplot(
            est_series,
            positions=range(len(ts)),
            widths=0.5,
            patch_artist=True,
        )
        for patch in boxes["boxes"]:
            patch.set_facecolor("#9ecae1")
        means = [sum(v) / len(v) for v in exact_series]
        ax.plot(range(len(ts)), means, "k_", markersize=18, label="exact mean")
        ax.set_xticks(range(len(ts)), [str(t) for t in ts])
        ax.legend(loc="best")
    ax.set_xlabel("transaction index")
    ax.set_ylabel("share of revenue")
    ax.set_title("sampled share spread vs exact")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_growth_figure(rows: Sequence[GrowthRow], path: str) -> None:
    """Distinct-marginal counts against the 2^sqrt(n) - 1 floor."""
    fig, (lin, log) = plt.subplots(1, 2, figsize=(9, 4))
    ns = [r.n for r in rows]
    counts = [r.unique_count for r in rows]
    floors = [r.floor for r in rows]
    for ax, logscale in ((lin, False), (log, True)):
        ax.plot(ns, counts, "o-", label="distinct marginals")
        ax.plot(ns, floors, "s--", label="2^sqrt(n) - 1")
        ax.set_xlabel("transactions n")
        if logscale:
            ax.set_yscale("log", base=2)
            ax.set_ylabel("count (log2)")
        else:
            ax.set_ylabel("count")
        ax.legend(loc="best")
    mode = rows[0].mode if rows else ""
    fig.suptitle(f"marginal-contribution growth ({mode})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
