"""CSV-to-figure tool for the bandit experiment outputs."""

from .figures import (
    FigureSpec,
    LIFELONG_COLUMNS,
    MORTAL_COLUMNS,
    PlotError,
    SchemaError,
    SWEEP_COLUMNS,
    read_table,
    render,
    sniff_kind,
)

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "LIFELONG_COLUMNS",
    "MORTAL_COLUMNS",
    "PlotError",
    "SchemaError",
    "SWEEP_COLUMNS",
    "read_table",
    "render",
    "sniff_kind",
    "__version__",
]
