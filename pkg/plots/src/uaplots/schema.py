"""CSV schemas for the experiment outputs and validated loading.

Panel files carry raw per-run rows; aggregation to mean and standard error
happens here, per x-value, so partially written files still plot.  Grid
files carry one closed-form value per (depth, photons) cell.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

PANEL_KINDS = ("tvd_vs_N", "tvd_vs_nu", "p_vs_N", "p_vs_nu", "grid")

#: columns each panel kind reads from its CSV
REQUIRED_COLUMNS = {
    "tvd_vs_N": ("N", "tvd_ua", "tvd_da", "bound_ua", "bound_da"),
    "tvd_vs_nu": ("nu", "tvd_ua", "tvd_da", "bound_ua", "bound_da"),
    "p_vs_N": ("N", "p_post", "p_uni"),
    "p_vs_nu": ("nu", "p_post", "p_uni"),
    "grid": ("d", "n", "p_uni"),
}


class SchemaError(ValueError):
    """CSV header does not provide the columns a panel kind needs."""


@dataclass(frozen=True)
class PanelSpec:
    csv_path: str
    panel_kind: str
    output_image_path: str

    def __post_init__(self):
        if self.panel_kind not in PANEL_KINDS:
            raise SchemaError(
                f"unknown panel kind {self.panel_kind!r}; expected one of {PANEL_KINDS}"
            )


def load_columns(path: str | Path, required: tuple[str, ...]) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise SchemaError(
                f"{path}: missing required column(s) {', '.join(missing)} "
                f"(header: {', '.join(header)})"
            )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return {
        c: np.array([float(row[c]) for row in rows], dtype=float) for c in required
    }


def aggregate(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Mean and standard error of ``y`` grouped by distinct ``x``, x-sorted."""
    xs = np.unique(x)
    means = np.empty_like(xs, dtype=float)
    stderrs = np.empty_like(xs, dtype=float)
    for i, val in enumerate(xs):
        group = y[x == val]
        means[i] = group.mean()
        stderrs[i] = group.std(ddof=1) / np.sqrt(group.size) if group.size > 1 else 0.0
    return xs, means, stderrs
