"""chartbench: a workbench for surface-braid charts.

Charts live on the 2-sphere as combinatorial maps (rotation systems) with
oriented labeled edges and hoop decorations.  The package validates the
chart axioms, applies and searches C-moves, runs IO-calculation, matches
pseudo-chart patterns, enumerates small charts isomorph-free, and replays
non-minimality arguments as machine-checked certificates.
"""

from .model import (
    BLACK,
    CROSSING,
    WHITE,
    BuildError,
    Chart,
    ChartError,
    Dart,
    Edge,
    Hoop,
    OperationError,
    ValidationReport,
    Vertex,
    build_chart,
    canonical_key,
    dumps,
    loads,
    middle_darts,
    trace_faces,
    transform,
    validate,
)

__all__ = [
    "BLACK",
    "CROSSING",
    "WHITE",
    "BuildError",
    "Chart",
    "ChartError",
    "Dart",
    "Edge",
    "Hoop",
    "OperationError",
    "ValidationReport",
    "Vertex",
    "build_chart",
    "canonical_key",
    "dumps",
    "loads",
    "middle_darts",
    "trace_faces",
    "transform",
    "validate",
]
