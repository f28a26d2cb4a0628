"""Matplotlib rendering for the CLI report paths.

Every figure is written next to its CSV with the same stem.  The style is
kept spare: single panel unless the data is two-dimensional, no interactive
backends.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

plt.rcParams.update({
    "figure.figsize": (6.0, 3.8),
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
})


def density_figure(path, xs, psi, support, title):
    fig, ax = plt.subplots()
    ax.plot(xs, psi, lw=1.2)
    ax.axvline(support[0], color="k", lw=0.6, ls="--")
    ax.axvline(support[1], color="k", lw=0.6, ls="--")
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.set_title(title)
    fig.savefig(path)
    plt.close(fig)


def heatmap_figure(path, xs, ys, values, title, xlabel="x", ylabel="y"):
    fig, ax = plt.subplots(figsize=(4.6, 4.0))
    im = ax.pcolormesh(np.asarray(ys), np.asarray(xs), np.asarray(values),
                       shading="nearest", cmap="viridis")
    fig.colorbar(im, ax=ax, shrink=0.85)
    ax.set_xlabel(ylabel)
    ax.set_ylabel(xlabel)
    ax.set_title(title)
    fig.savefig(path)
    plt.close(fig)


def trajectory_figure(path, taus, columns, residual_columns, title):
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.0, 5.4), sharex=True)
    for name, vals in columns.items():
        ax1.plot(taus, vals, lw=1.0, label=name)
    ax1.legend(ncol=3, fontsize=8)
    ax1.set_ylabel("state")
    ax1.set_title(title)
    for name, vals in residual_columns.items():
        ax2.semilogy(taus, np.maximum(np.abs(vals), 1e-18), lw=1.0, label=name)
    ax2.legend(ncol=2, fontsize=8)
    ax2.set_xlabel("tau")
    ax2.set_ylabel("|residual|")
    fig.savefig(path)
    plt.close(fig)


def sweep_figure(path, ts, series, title, xlabel="t"):
    fig, ax = plt.subplots()
    for name, vals in series.items():
        ax.plot(ts, vals, lw=1.2, label=name)
    ax.set_xlabel(xlabel)
    ax.legend(fontsize=8)
    ax.set_title(title)
    fig.savefig(path)
    plt.close(fig)
