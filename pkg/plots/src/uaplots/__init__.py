"""Rendering of uaboson experiment CSVs into distance/success-probability
panels and the success-floor heatmap."""

from .render import DEFAULT_STYLE, build_figure, load_style, render
from .schema import PANEL_KINDS, PanelSpec, SchemaError, aggregate, load_columns

__version__ = "0.1.0"
