"""Figure rendering for the report path. All figures go to files (Agg)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .stats import DegreeHistogram, PowerLawFit

__all__ = ["degree_figure", "community_sizes_figure", "rank_profile_figure"]

_DPI = 150


def degree_figure(hist: DegreeHistogram, path: str, title: str, fit: PowerLawFit | None = None):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    if hist.degrees.size:
        ax.loglog(hist.degrees, hist.counts, ".", ms=4, alpha=0.7, label="exact")
        if hist.log_bins.size:
            centers = np.sqrt(hist.log_bins[:, 0] * hist.log_bins[:, 1])
            widths = hist.log_bins[:, 1] - hist.log_bins[:, 0]
            ax.loglog(centers, hist.log_bins[:, 2] / widths, "s-", ms=4, label="log-binned density")
        if fit is not None:
            ks = hist.degrees[hist.degrees >= fit.kmin].astype(float)
            if ks.size:
                # scale the fitted pmf slope to pass through the tail mass
                tail_total = hist.counts[hist.degrees >= fit.kmin].sum()
                ref = tail_total * (ks / ks[0]) ** (-fit.alpha)
                ax.loglog(ks, ref, "--", lw=1.2, label=f"alpha={fit.alpha:.2f}, kmin={fit.kmin}")
    ax.set_xlabel("degree")
    ax.set_ylabel("count")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def community_sizes_figure(sizes, path: str, title: str):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    vals = [s for _, s in sizes]
    if vals:
        ax.bar(range(1, len(vals) + 1), vals, width=0.9)
        ax.set_yscale("log")
    ax.set_xlabel("community rank")
    ax.set_ylabel("size")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def rank_profile_figure(scores, path: str, title: str):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    s = np.sort(np.asarray(scores))[::-1]
    if s.size:
        ax.loglog(np.arange(1, s.size + 1), s, "-", lw=1.0)
    ax.set_xlabel("rank")
    ax.set_ylabel("score")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
