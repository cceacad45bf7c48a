"""Figure rendering for the contextuality-geometry CSV outputs."""

from .io import SchemaError, Table, read_fig1, read_fig2a, read_fig2b, read_ncycle
from .render import (
    chi_crosses_threshold_near_marker,
    render_fig1,
    render_fig2,
    render_ncycle,
)

__version__ = "0.1.0"
