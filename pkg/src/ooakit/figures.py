"""Matplotlib renderings written alongside the delimited reports.

Each renderer writes one PNG with a deterministic layout and returns the
path. Importing this module selects the Agg backend, so it is safe headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .core import SymbolArray  # noqa: E402

_DPI = 150


def render_array(array: SymbolArray, path, title: str | None = None) -> Path:
    """Heatmap of the symbol grid with block separators."""
    path = Path(path)
    rows = array.rows if array.num_rows else np.zeros((1, max(array.num_cols, 1)))
    fig, ax = plt.subplots(figsize=(max(3.2, 0.28 * max(array.num_cols, 1) + 1.2),
                                    max(2.4, 0.12 * max(array.num_rows, 1) + 1.0)))
    im = ax.imshow(rows, cmap="viridis", vmin=0, vmax=max(array.q - 1, 1),
                   interpolation="nearest", aspect="auto")
    for b in range(1, array.n):
        ax.axvline(b * array.r - 0.5, color="white", linewidth=1.5)
    ax.set_xlabel("column")
    ax.set_ylabel("row")
    if title:
        ax.set_title(title)
    fig.colorbar(im, ax=ax, ticks=range(array.q), label="symbol")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def render_certificate(ind_matrix: np.ndarray, dual: np.ndarray, path,
                       title: str | None = None) -> Path:
    """Indicator matrix, signed dual, and their biorthogonality product."""
    path = Path(path)
    product = dual.T @ ind_matrix
    fig, axes = plt.subplots(1, 3, figsize=(11, 4))
    panels = [
        (ind_matrix, "indicator columns", "Greys"),
        (dual, "dual columns", "coolwarm"),
        (product, "dual.T @ indicator", "Greys"),
    ]
    for ax, (mat, name, cmap) in zip(axes, panels):
        vmax = max(1, int(np.abs(mat).max()))
        im = ax.imshow(mat, cmap=cmap, vmin=-vmax if mat.min() < 0 else 0,
                       vmax=vmax, interpolation="nearest", aspect="auto")
        ax.set_title(name)
        fig.colorbar(im, ax=ax, shrink=0.8)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def render_bounds(q: int, n: int, r: int, path, c=1, C=1,
                  title: str | None = None) -> Path:
    """Lower and parametric upper bounds against strength, log scale."""
    from .bounds import existence_upper_bound, ooa_lower_bound

    path = Path(path)
    strengths = list(range(1, n * r + 1))
    lower = [ooa_lower_bound(q, n, r, t) for t in strengths]
    upper = [existence_upper_bound(q, n, r, t, c) for t in strengths]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(strengths, lower, "o-", label="exact lower bound")
    ax.plot(strengths, upper, "s--", label=f"parametric upper bound (c={c})")
    ax.axhline(q ** (n * r), color="grey", linewidth=1,
               label="full grid size")
    ax.set_yscale("log")
    ax.set_xlabel("strength t")
    ax.set_ylabel("rows")
    ax.set_xticks(strengths)
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path
