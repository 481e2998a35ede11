"""lamcore: exact cores of dual-tree pairs for weighted multicurves.

Surfaces are closed, oriented, of genus at least two, modeled by a canonical
one-vertex triangulation; curves live in normal coordinates with exact
rational weights.  The library computes geometric intersection numbers, the
canonical filling/laminar decomposition of a pair of measured laminations,
the core of the product of their dual trees, the equivalent vector-valued
mixed structures, mapping class actions generated by Dehn twists, and the
closed-ball boundary model.
"""

__version__ = "0.1.0"

from .surface import (
    CutPiece,
    NormalMulticurve,
    TriangulatedSurface,
    cut_along,
    new_surface,
    trace_components,
    validate_normal,
)

__all__ = [
    "CutPiece",
    "NormalMulticurve",
    "TriangulatedSurface",
    "cut_along",
    "new_surface",
    "trace_components",
    "validate_normal",
    "__version__",
]
