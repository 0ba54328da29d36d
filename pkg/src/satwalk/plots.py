"""Self-contained SVG figures (histogram and eigenstate scatter)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "satwalk"  # deterministic element ids

import matplotlib.pyplot as plt
import numpy as np

from .entanglement import EigenstateSweep
from .levelstats import SpacingSample, spacing_histogram


def save_spacing_histogram(sample: SpacingSample, path: str | Path, **kwargs) -> None:
    centers, emp, coe = spacing_histogram(sample, **kwargs)
    width = centers[1] - centers[0] if len(centers) > 1 else 0.1
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.bar(centers, emp, width=width * 0.95, color="lightsteelblue", edgecolor="gray", label="spacings")
    ax.plot(centers, coe, "k-", lw=1.5, label=r"$\frac{\pi}{2} s\, e^{-\pi s^2/4}$")
    ax.set_xlabel("s")
    ax.set_ylabel("P(s)")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})  # keep checksums run-independent
    plt.close(fig)


def save_sweep_scatter(sweep: EigenstateSweep, path: str | Path) -> None:
    fig, axes = plt.subplots(1, 2, figsize=(8, 3.4), sharex=True)
    axes[0].plot(sweep.phases, sweep.entropies, ".", ms=3, color="tab:blue")
    axes[0].axhline(np.log(2), color="gray", lw=0.8, ls="--")
    axes[0].set_xlabel(r"$\varepsilon$")
    axes[0].set_ylabel("S")
    axes[1].plot(sweep.phases, sweep.x_expectations, ".", ms=3, color="tab:orange")
    axes[1].axhline(0.0, color="gray", lw=0.8, ls="--")
    axes[1].set_xlabel(r"$\varepsilon$")
    axes[1].set_ylabel(rf"$\langle X_{{{sweep.site}}} \rangle$")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
