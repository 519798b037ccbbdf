"""Figure builders for the experiment CSVs.

Marker conventions: coherent-averaging series use circle markers, the
distribution-averaging baseline uses stars.  Distance panels default to a
log y-scale and fall back to linear when any plotted series is identically
zero.  The grid panel renders the success floor as a heatmap over depth and
photon number.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schema import PanelSpec, REQUIRED_COLUMNS, aggregate, load_columns

DEFAULT_STYLE = {
    "figsize": (6.0, 4.0),
    "dpi": 150,
    "ua_color": "tab:blue",
    "da_color": "tab:red",
    "bound_ua_color": "tab:cyan",
    "bound_da_color": "tab:orange",
    "floor_color": "tab:green",
    "cmap": "viridis",
    "logy": None,  # None = automatic
}

UA_MARKER = "o"
DA_MARKER = "*"


def load_style(path: str | None) -> dict:
    style = dict(DEFAULT_STYLE)
    if path:
        style.update(json.loads(Path(path).read_text()))
    return style


def _axis_label(column: str) -> str:
    return {"N": "redundant copies N", "nu": "parameter variance"}[column]


def _errorbar(ax, cols, x_col, y_col, color, marker, label):
    xs, mean, stderr = aggregate(cols[x_col], cols[y_col])
    ax.errorbar(
        xs, mean, yerr=stderr, color=color, marker=marker, capsize=2.5, label=label
    )
    return mean


def _tvd_panel(cols, x_col, style):
    fig, ax = plt.subplots(figsize=style["figsize"])
    series = [
        _errorbar(ax, cols, x_col, "tvd_ua", style["ua_color"], UA_MARKER,
                  "unitary averaging (exact)"),
        _errorbar(ax, cols, x_col, "tvd_da", style["da_color"], DA_MARKER,
                  "distribution averaging (exact)"),
        _errorbar(ax, cols, x_col, "bound_ua", style["bound_ua_color"], UA_MARKER,
                  "unitary averaging (bound)"),
        _errorbar(ax, cols, x_col, "bound_da", style["bound_da_color"], DA_MARKER,
                  "distribution averaging (bound)"),
    ]
    logy = style["logy"]
    if logy is None:
        logy = all(np.all(s > 0) for s in series)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(_axis_label(x_col))
    ax.set_ylabel("total variation distance")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def _success_panel(cols, x_col, style):
    fig, ax = plt.subplots(figsize=style["figsize"])
    xs, mean, stderr = aggregate(cols[x_col], cols["p_post"])
    ax.errorbar(xs, mean, yerr=stderr, color=style["ua_color"], marker=UA_MARKER,
                capsize=2.5, label="unitary averaging p_post")
    ax.plot(xs, np.ones_like(xs), color=style["da_color"], marker=DA_MARKER,
            linestyle="--", label="distribution averaging (always 1)")
    floor_xs, floor_mean, _ = aggregate(cols[x_col], cols["p_uni"])
    ax.plot(floor_xs, floor_mean, color=style["floor_color"], linestyle=":",
            label="uniform-depth floor")
    ax.set_xlabel(_axis_label(x_col))
    ax.set_ylabel("success probability")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def _grid_panel(cols, style):
    d_vals = np.unique(cols["d"])
    n_vals = np.unique(cols["n"])
    grid = np.full((d_vals.size, n_vals.size), np.nan)
    d_index = {v: i for i, v in enumerate(d_vals)}
    n_index = {v: i for i, v in enumerate(n_vals)}
    for d, n, p in zip(cols["d"], cols["n"], cols["p_uni"]):
        grid[d_index[d], n_index[n]] = p
    fig, ax = plt.subplots(figsize=style["figsize"])
    image = ax.imshow(
        grid,
        origin="lower",
        aspect="auto",
        cmap=style["cmap"],
        extent=(n_vals.min() - 0.5, n_vals.max() + 0.5,
                d_vals.min() - 0.5, d_vals.max() + 0.5),
        vmin=0.0,
        vmax=1.0,
    )
    fig.colorbar(image, ax=ax, label="success floor")
    ax.set_xlabel("photons n")
    ax.set_ylabel("depth d")
    fig.tight_layout()
    return fig


def build_figure(panel: PanelSpec, style: dict | None = None):
    """Build (without saving) the figure for a panel spec."""
    style = style or dict(DEFAULT_STYLE)
    cols = load_columns(panel.csv_path, REQUIRED_COLUMNS[panel.panel_kind])
    if panel.panel_kind == "grid":
        return _grid_panel(cols, style)
    if panel.panel_kind in ("tvd_vs_N", "tvd_vs_nu"):
        x_col = "N" if panel.panel_kind.endswith("_N") else "nu"
        return _tvd_panel(cols, x_col, style)
    x_col = "N" if panel.panel_kind.endswith("_N") else "nu"
    return _success_panel(cols, x_col, style)


def render(panel: PanelSpec, style: dict | None = None) -> str:
    """Render a panel to its output path; returns the path written."""
    style = style or dict(DEFAULT_STYLE)
    fig = build_figure(panel, style)
    try:
        fig.savefig(
            panel.output_image_path,
            dpi=style["dpi"],
            metadata=_stable_metadata(panel.output_image_path),
        )
    finally:
        plt.close(fig)
    return panel.output_image_path


def _stable_metadata(path: str) -> dict | None:
    # strip the version-dependent writer tag so identical inputs give identical bytes
    if str(path).lower().endswith(".png"):
        return {"Software": "uaplots"}
    if str(path).lower().endswith(".svg"):
        return {"Date": None}
    return None
