"""ringfigs: figures from fluxring CSV artifacts.

Reads only the documented CSV schemas (sweep/curve, threshold) and renders
three figure kinds: amplitude-frequency heatmaps, average-fidelity-vs-
frequency curves, and threshold-frequency curves with the closed-form
overlay. No physics is computed here; every number comes from the CSV.
"""

__version__ = "0.1.0"

from .csvio import SchemaMismatch, UnitMismatch, read_sweep, read_threshold
from .figures import FigureSpec, render

__all__ = [
    "__version__",
    "SchemaMismatch",
    "UnitMismatch",
    "read_sweep",
    "read_threshold",
    "FigureSpec",
    "render",
]
