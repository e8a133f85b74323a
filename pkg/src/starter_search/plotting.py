"""Figures written next to the text reports."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .groups import GridGeometry  # noqa: E402


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def search_profile(profiles: Mapping[str, Sequence[int]], path: str | Path, title: str = "") -> Path:
    """Nodes accepted at each depth, one bar group per run, log scale."""
    labels = list(profiles)
    depth = max((len(v) for v in profiles.values()), default=0)
    fig, ax = plt.subplots(figsize=(max(6, depth * 0.8), 4))
    width = 0.8 / max(len(labels), 1)
    x = np.arange(depth)
    for j, lab in enumerate(labels):
        vals = np.zeros(depth)
        vals[: len(profiles[lab])] = profiles[lab]
        ax.bar(x + j * width - 0.4 + width / 2, np.where(vals > 0, vals, np.nan), width, label=lab)
    ax.set_yscale("log")
    ax.set_xticks(x)
    ax.set_xlabel("partial block size")
    ax.set_ylabel("nodes")
    if title:
        ax.set_title(title)
    if len(labels) > 1:
        ax.legend(fontsize="small", ncol=2)
    return _save(fig, path)


def census_bars(counts: Mapping[str, int], path: str | Path, reference: int | None = None, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    labels = list(counts)
    ax.bar(range(len(labels)), [counts[k] for k in labels], color="tab:blue")
    if reference is not None:
        ax.axhline(reference, color="tab:red", ls="--", lw=1, label=f"reference {reference:,}")
        ax.legend(fontsize="small")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("partial blocks")
    if title:
        ax.set_title(title)
    return _save(fig, path)


def block_grid(geom: GridGeometry, block: Sequence[int], path: str | Path, title: str = "") -> Path:
    """The block drawn on the row/column grid (rows down, columns across)."""
    img = np.zeros((geom.n_rows, geom.n_cols))
    for pid in block:
        e, f = geom.coords(pid)
        img[e, f] = 1
    fig, ax = plt.subplots(figsize=(max(3, geom.n_cols * 0.35), max(3, geom.n_rows * 0.18)))
    ax.imshow(img, cmap="Greys", aspect="auto", interpolation="nearest", vmin=0, vmax=1)
    ax.set_xlabel("column")
    ax.set_ylabel("row")
    ax.set_xticks(range(geom.n_cols))
    if title:
        ax.set_title(title, fontsize="small")
    return _save(fig, path)


def incidence(blocks: Sequence[Sequence[int]], v: int, path: str | Path, title: str = "") -> Path:
    """Point/block incidence matrix, blocks as rows."""
    img = np.zeros((len(blocks), v))
    for r, B in enumerate(blocks):
        img[r, [x - 1 for x in B]] = 1
    fig, ax = plt.subplots(figsize=(5, 5 * len(blocks) / max(v, 1)))
    ax.imshow(img, cmap="Greys", interpolation="nearest", vmin=0, vmax=1)
    ax.set_xlabel("point")
    ax.set_ylabel("block")
    if title:
        ax.set_title(title, fontsize="small")
    return _save(fig, path)
