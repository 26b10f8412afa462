"""Figure rendering for fpqsim output files; no physics lives here."""

from .datafiles import SCHEMA, SchemaError, read_table
from .render import KINDS, FigureSpec, RenderInfo, render

__version__ = "0.1.0"

__all__ = [
    "SCHEMA",
    "SchemaError",
    "read_table",
    "KINDS",
    "FigureSpec",
    "RenderInfo",
    "render",
]
